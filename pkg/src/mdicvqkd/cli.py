"""Command-line front end: parameter sweeps with CSV/JSON emission.

Commands mirror the standard figure families: ``point`` evaluates a single
parameter set, ``sweep-variance`` scans V, ``sweep-distance`` scans the
end-to-end distance (adding the repeaterless-capacity column), ``noise-threshold``
solves the tolerable excess noise per distance, and ``sweep-beta`` scans the
reconciliation efficiency.  Exit codes: 0 success, 1 evaluation or I/O error,
2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from . import __version__
from .channel import ChannelScenario
from .errors import DomainError, EvaluationError, PhysicalityError
from .keyrate import KeyRateResult, plob_bound, secret_key_rate
from .optimizer import maximize_over_t, noise_threshold, strict_t_upper

COMMANDS = ("point", "sweep-variance", "sweep-distance", "noise-threshold", "sweep-beta")

DEFAULTS = {"xi": 0.002, "beta": 0.95, "kappa": 0.2, "format": "csv", "out": "-"}

KR_FIELDS = (
    "a",
    "b",
    "c",
    "theta",
    "zeta",
    "nu1",
    "nu2",
    "nu3",
    "i_ab",
    "chi_be",
    "p_d",
    "key_rate",
    "beta",
    "t_bs",
    "vm_out",
    "within_bound",
)

CONFIG_KEYS = (
    "command",
    "protocol",
    "case",
    "v",
    "t",
    "xi",
    "beta",
    "kappa",
    "distance",
    "range",
    "optimize_t",
    "strict_bound",
    "out",
    "format",
)


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class SweepConfig:
    command: str
    protocol: str
    case: str
    v: Optional[float]
    t: Optional[float]
    xi: Optional[float]
    beta: Optional[float]
    kappa: float
    distance: Optional[float]
    range: Optional[tuple[float, float, float]]
    optimize_t: bool
    strict_bound: bool
    out: str
    format: str


def _parse_range(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"--range must be START:STOP:STEP, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"non-numeric --range component in {text!r}") from exc
    return start, stop, step


def _grid(rng: tuple[float, float, float]) -> list[float]:
    start, stop, step = rng
    n = int(math.floor((stop - start) / step + 1e-9))
    return [start + i * step for i in range(n + 1)]


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="keyrate",
        description="Secret key rates for the four-state relay protocol, "
        "with and without zero-photon catalysis.",
    )
    sub = parser.add_subparsers(dest="command", metavar="{" + ",".join(COMMANDS) + "}")
    sub.required = True

    help_by_command = {
        "point": "evaluate one parameter point",
        "sweep-variance": "key rate versus the source variance V",
        "sweep-distance": "key rate versus the end-to-end distance (with the "
        "repeaterless bound)",
        "noise-threshold": "tolerable excess noise versus the end-to-end distance",
        "sweep-beta": "key rate versus the reconciliation efficiency",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, help=help_by_command[name])
        p.add_argument("--protocol", choices=("zpc", "original"))
        p.add_argument("--case", choices=("asym", "sym"))
        p.add_argument("--v", type=float, help="source variance V = 1 + 2 alpha^2")
        p.add_argument("--t", type=float, help="fixed catalysis transmittance")
        p.add_argument("--xi", type=float, help="excess noise per fiber (default 0.002)")
        p.add_argument("--beta", type=float, help="reconciliation efficiency (default 0.95)")
        p.add_argument("--kappa", type=float, help="fiber loss dB/km (default 0.2)")
        p.add_argument("--distance", type=float, help="end-to-end distance in km")
        p.add_argument("--range", type=str, help="swept axis as START:STOP:STEP")
        p.add_argument(
            "--optimize-t",
            dest="optimize_t",
            action=argparse.BooleanOptionalAction,
            default=None,
            help="search the catalysis transmittance at every grid point",
        )
        p.add_argument(
            "--strict-bound",
            dest="strict_bound",
            action=argparse.BooleanOptionalAction,
            default=None,
            help="restrict the T search to the Gaussian-equivalence region",
        )
        p.add_argument("--out", type=str, help="output path ('-' for stdout)")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--config", type=str, help="JSON file with config values "
                       "(explicit flags win)")

    verify = sub.add_parser("verify")
    verify.add_argument("--alpha-sq", type=float, action="append", dest="alpha_sqs")
    verify.add_argument("--t", type=float, action="append", dest="ts")
    verify.add_argument("--n-cut", type=int, default=40)
    return parser


def _load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from exc
    if isinstance(data, dict) and "metadata" in data:
        meta = data["metadata"]
        if isinstance(meta, dict) and isinstance(meta.get("config"), dict):
            data = meta["config"]
    if not isinstance(data, dict):
        raise UsageError(f"config {path!r} must hold a JSON object")
    unknown = set(data) - set(CONFIG_KEYS)
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    return data


def _build_config(args: argparse.Namespace) -> SweepConfig:
    file_values: dict = {}
    if getattr(args, "config", None):
        file_values = _load_config_file(args.config)
        if file_values.get("command") not in (None, args.command):
            raise UsageError(
                f"config command {file_values['command']!r} does not match "
                f"the invoked command {args.command!r}"
            )

    def pick(key, flag_value):
        if flag_value is not None:
            return flag_value
        return file_values.get(key)

    raw_range = pick("range", getattr(args, "range", None))
    if isinstance(raw_range, str):
        rng = _parse_range(raw_range)
    elif isinstance(raw_range, (list, tuple)):
        if len(raw_range) != 3:
            raise UsageError(f"range must have 3 entries, got {raw_range!r}")
        rng = tuple(float(x) for x in raw_range)
    else:
        rng = None

    cfg = SweepConfig(
        command=args.command,
        protocol=pick("protocol", args.protocol),
        case=pick("case", args.case),
        v=pick("v", args.v),
        t=pick("t", args.t),
        xi=pick("xi", args.xi),
        beta=pick("beta", args.beta),
        kappa=pick("kappa", args.kappa) if pick("kappa", args.kappa) is not None else DEFAULTS["kappa"],
        distance=pick("distance", args.distance),
        range=rng,
        optimize_t=bool(pick("optimize_t", args.optimize_t)),
        strict_bound=bool(pick("strict_bound", args.strict_bound)),
        out=pick("out", args.out) or DEFAULTS["out"],
        format=pick("format", args.format) or DEFAULTS["format"],
    )
    return _validate(cfg)


def _validate(cfg: SweepConfig) -> SweepConfig:
    if cfg.protocol not in ("zpc", "original"):
        raise UsageError("--protocol is required (zpc or original)")
    if cfg.case not in ("asym", "sym"):
        raise UsageError("--case is required (asym or sym)")
    if cfg.format not in ("csv", "json"):
        raise UsageError(f"unknown format {cfg.format!r}")

    needs_range = cfg.command != "point"
    if needs_range and cfg.range is None:
        raise UsageError(f"{cfg.command} requires --range START:STOP:STEP")
    if not needs_range and cfg.range is not None:
        raise UsageError("point does not take --range")
    if cfg.range is not None:
        start, stop, step = cfg.range
        if step <= 0:
            raise UsageError(f"range step must be > 0, got {step}")
        if not start < stop:
            raise UsageError(f"range start must be below stop, got {start}:{stop}")

    axis = {
        "point": None,
        "sweep-variance": "v",
        "sweep-distance": "distance",
        "noise-threshold": "distance",
        "sweep-beta": "beta",
    }[cfg.command]
    if axis == "v" and cfg.v is not None:
        raise UsageError("sweep-variance scans V; drop --v")
    if axis == "distance" and cfg.distance is not None:
        raise UsageError(f"{cfg.command} scans the distance; drop --distance")
    if axis == "beta" and cfg.beta is not None:
        raise UsageError("sweep-beta scans beta; drop --beta")
    if cfg.command == "noise-threshold" and cfg.xi is not None:
        raise UsageError("noise-threshold solves for the excess noise; drop --xi")

    if axis != "v":
        if cfg.v is None:
            raise UsageError(f"{cfg.command} requires --v")
        if cfg.v <= 1.0:
            raise UsageError(f"--v must exceed 1, got {cfg.v}")
    elif cfg.range is not None and cfg.range[0] <= 1.0:
        raise UsageError("variance range must start above 1")
    if cfg.command in ("point", "sweep-variance", "sweep-beta") and cfg.distance is None:
        raise UsageError(f"{cfg.command} requires --distance")
    if cfg.distance is not None and cfg.distance < 0:
        raise UsageError(f"--distance must be >= 0, got {cfg.distance}")
    if axis == "beta" and cfg.range is not None:
        start, stop, _ = cfg.range
        if not (0.0 < start and stop <= 1.0):
            raise UsageError("beta range must lie inside (0, 1]")

    xi = cfg.xi if cfg.xi is not None else (None if cfg.command == "noise-threshold" else DEFAULTS["xi"])
    beta = cfg.beta if cfg.beta is not None else (None if axis == "beta" else DEFAULTS["beta"])
    if xi is not None and xi < 0:
        raise UsageError(f"--xi must be >= 0, got {xi}")
    if beta is not None and not 0.0 < beta <= 1.0:
        raise UsageError(f"--beta must lie in (0, 1], got {beta}")
    if cfg.kappa <= 0:
        raise UsageError(f"--kappa must be > 0, got {cfg.kappa}")

    t = cfg.t
    optimize_t = cfg.optimize_t
    if cfg.protocol == "original":
        if optimize_t:
            raise UsageError("the original protocol has no transmittance to optimize")
        if t is not None and t != 1.0:
            raise UsageError("the original protocol fixes t = 1")
        t = 1.0
    else:
        if cfg.command == "noise-threshold":
            if t is not None:
                raise UsageError("noise-threshold always optimizes T for zpc; drop --t")
            optimize_t = True
        elif optimize_t:
            if t is not None:
                raise UsageError("give either --t or --optimize-t, not both")
        elif t is None:
            raise UsageError("zpc requires --t or --optimize-t")
        if t is not None and not 0.0 < t <= 1.0:
            raise UsageError(f"--t must lie in (0, 1], got {t}")

    return SweepConfig(
        command=cfg.command,
        protocol=cfg.protocol,
        case=cfg.case,
        v=cfg.v,
        t=t,
        xi=xi,
        beta=beta,
        kappa=cfg.kappa,
        distance=cfg.distance,
        range=cfg.range,
        optimize_t=optimize_t,
        strict_bound=cfg.strict_bound,
        out=cfg.out,
        format=cfg.format,
    )


def config_echo(cfg: SweepConfig) -> dict:
    return {
        "command": cfg.command,
        "protocol": cfg.protocol,
        "case": cfg.case,
        "v": cfg.v,
        "t": cfg.t,
        "xi": cfg.xi,
        "beta": cfg.beta,
        "kappa": cfg.kappa,
        "distance": cfg.distance,
        "range": list(cfg.range) if cfg.range else None,
        "optimize_t": cfg.optimize_t,
        "strict_bound": cfg.strict_bound,
        "out": cfg.out,
        "format": cfg.format,
    }


def _kr_row(res: KeyRateResult) -> dict:
    return {
        "a": res.cov.a,
        "b": res.cov.b,
        "c": res.cov.c,
        "theta": res.theta,
        "zeta": res.zeta,
        "nu1": res.nu1,
        "nu2": res.nu2,
        "nu3": res.nu3,
        "i_ab": res.i_ab,
        "chi_be": res.chi_be,
        "p_d": res.p_d,
        "key_rate": res.key_rate,
        "beta": res.beta,
        "t_bs": res.t_bs,
        "vm_out": res.vm_out,
        "within_bound": res.within_bound,
    }


def _t_search_range(cfg: SweepConfig, alpha_sq: float) -> tuple[float, float]:
    hi = strict_t_upper(alpha_sq) if cfg.strict_bound else 1.0
    if hi <= 0.01:
        raise EvaluationError(
            f"strict bound leaves no feasible transmittance at alpha_sq={alpha_sq}"
        )
    return (0.01, hi)


def _evaluate(
    cfg: SweepConfig, v: float, distance: float, xi: float, beta: float
) -> tuple[KeyRateResult, Optional[float]]:
    """One grid-point evaluation; returns the record and T* when optimizing."""
    alpha_sq = (v - 1.0) / 2.0
    scenario = ChannelScenario.for_case(cfg.case, distance, xi, cfg.kappa)
    if cfg.optimize_t:
        outcome = maximize_over_t(alpha_sq, scenario, beta, _t_search_range(cfg, alpha_sq))
        t_opt = outcome.arg_opt
        return secret_key_rate(alpha_sq, t_opt, scenario, beta), t_opt
    return secret_key_rate(alpha_sq, cfg.t, scenario, beta), None


def run_sweep(cfg: SweepConfig) -> tuple[list[str], list[dict]]:
    """Materialize the rows for one command, in ascending axis order."""
    lead = ["protocol", "case"]
    t_cols = ["t_opt"] if cfg.optimize_t else []
    base = {"protocol": cfg.protocol, "case": cfg.case}
    rows: list[dict] = []

    def eval_row(label: str, v: float, distance: float, xi: float, beta: float) -> dict:
        try:
            res, t_opt = _evaluate(cfg, v, distance, xi, beta)
        except (DomainError, PhysicalityError, EvaluationError) as exc:
            raise EvaluationError(f"evaluation failed at {label}: {exc}") from exc
        row = dict(base)
        if t_opt is not None:
            row["t_opt"] = t_opt
        row.update(_kr_row(res))
        return row

    if cfg.command == "point":
        columns = lead + ["v", "distance_km", "xi"] + t_cols + list(KR_FIELDS)
        row = eval_row("the requested point", cfg.v, cfg.distance, cfg.xi, cfg.beta)
        row.update({"v": cfg.v, "distance_km": cfg.distance, "xi": cfg.xi})
        rows.append(row)

    elif cfg.command == "sweep-variance":
        columns = lead + ["v"] + t_cols + list(KR_FIELDS)
        for v in _grid(cfg.range):
            row = eval_row(f"v={v:g}", v, cfg.distance, cfg.xi, cfg.beta)
            row["v"] = v
            rows.append(row)

    elif cfg.command == "sweep-distance":
        columns = lead + ["distance_km"] + t_cols + list(KR_FIELDS) + ["plob"]
        for d in _grid(cfg.range):
            row = eval_row(f"distance={d:g}", cfg.v, d, cfg.xi, cfg.beta)
            row["distance_km"] = d
            scen = ChannelScenario.for_case(cfg.case, d, cfg.xi, cfg.kappa)
            try:
                row["plob"] = plob_bound(scen)
            except DomainError:
                row["plob"] = math.inf
            rows.append(row)

    elif cfg.command == "noise-threshold":
        columns = lead + ["distance_km", "xi_threshold"] + t_cols + list(KR_FIELDS)
        for d in _grid(cfg.range):
            scen = ChannelScenario.for_case(cfg.case, d, 0.0, cfg.kappa)
            try:
                thr = noise_threshold(cfg.v, cfg.protocol, scen, cfg.beta)
            except (DomainError, EvaluationError) as exc:
                raise EvaluationError(f"evaluation failed at distance={d:g}: {exc}") from exc
            row = eval_row(f"distance={d:g}", cfg.v, d, thr, cfg.beta)
            row.update({"distance_km": d, "xi_threshold": thr})
            rows.append(row)

    elif cfg.command == "sweep-beta":
        columns = lead + ["beta"] + t_cols + [f for f in KR_FIELDS if f != "beta"]
        for b in _grid(cfg.range):
            row = eval_row(f"beta={b:g}", cfg.v, cfg.distance, cfg.xi, b)
            rows.append(row)

    else:
        raise UsageError(f"unknown command {cfg.command!r}")

    return columns, rows


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def _json_cell(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def write_output(
    columns: Sequence[str],
    rows: Sequence[dict],
    fmt: str,
    out: str,
    metadata: dict,
) -> None:
    if not rows:
        raise EvaluationError("no rows to write")

    def emit(fh: TextIO) -> None:
        if fmt == "csv":
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_format_cell(row[c]) for c in columns])
        else:
            payload = {
                "metadata": metadata,
                "rows": [{c: _json_cell(row[c]) for c in columns} for row in rows],
            }
            json.dump(payload, fh, indent=2)
            fh.write("\n")

    if out == "-":
        emit(sys.stdout)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            emit(fh)


def _run_verify(args: argparse.Namespace) -> int:
    from . import fock
    from .catalysis import success_probability
    from .modulation import lambda_coeffs, modulation_state

    alpha_sqs = args.alpha_sqs or [0.1, 0.2, 0.5, 0.75, 1.0]
    ts = args.ts or [0.275, 0.5, 1.0]
    n_cut = args.n_cut
    tol = 1e-9
    worst = 0.0
    print(f"{'alpha_sq':>9} {'T':>6} {'d_lambda':>10} {'d_X':>10} {'d_Z4':>10} "
          f"{'d_Pd':>10} {'d_Xsent':>10} {'d_model':>10}")
    for a in alpha_sqs:
        state = fock.build_phi4(a, n_cut)
        prod = modulation_state(a)
        d_lam = max(abs(fock.branch_weights(state) - prod.lambdas))
        d_x = abs(fock.quadrature_moment(state, "x_sq_kept") - prod.x_var)
        d_z = abs(fock.quadrature_moment(state, "x_cross") - prod.z4)
        for t in ts:
            post, p = fock.apply_zpc_oracle(state, t)
            d_p = abs(p - success_probability(a, t))
            rescaled = modulation_state(t * a)
            d_xs = abs(fock.quadrature_moment(post, "x_sq_sent") - rescaled.x_var)
            rebuilt = fock.build_phi4(t * a, n_cut)
            d_model = max(
                abs(fock.quadrature_moment(rebuilt, "x_sq_kept") - rescaled.x_var),
                abs(fock.quadrature_moment(rebuilt, "x_cross") - rescaled.z4),
            )
            worst = max(worst, d_lam, d_x, d_z, d_p, d_xs, d_model)
            print(f"{a:9.4f} {t:6.3f} {d_lam:10.2e} {d_x:10.2e} {d_z:10.2e} "
                  f"{d_p:10.2e} {d_xs:10.2e} {d_model:10.2e}")
    print(f"worst deviation: {worst:.2e} (tolerance {tol:.0e})")
    return 0 if worst <= tol else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    if args.command == "verify":
        return _run_verify(args)

    try:
        cfg = _build_config(args)
    except UsageError as exc:
        print(f"keyrate: {exc}", file=sys.stderr)
        return 2

    try:
        columns, rows = run_sweep(cfg)
        metadata = {"generator": "mdicvqkd", "version": __version__, "config": config_echo(cfg)}
        write_output(columns, rows, cfg.format, cfg.out, metadata)
    except (DomainError, PhysicalityError, EvaluationError) as exc:
        print(f"keyrate: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"keyrate: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
