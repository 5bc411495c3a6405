"""Scalar searches over the protocol parameters.

Key-rate curves over the catalysis transmittance T and the variance V are
empirically unimodal but not provably so; every maximization therefore runs a
coarse grid first and refines the best bracket by golden-section search.  The
returned optimum is the best sample ever evaluated, so it can never fall
below the coarse grid.  Security thresholds (tolerable excess noise, maximal
distance) are zeros of the optimized rate and are located by bisection.
All searches are deterministic.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Callable, Literal, Union

from .channel import DEFAULT_KAPPA_DB_PER_KM, ChannelScenario
from .errors import DomainError, EvaluationError
from .keyrate import secret_key_rate

__all__ = [
    "OptimizationOutcome",
    "maximize_over_t",
    "maximize_over_v",
    "noise_threshold",
    "max_distance",
    "strict_t_upper",
]

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

T_REFINE_TOL = 1e-4
V_REFINE_TOL = 1e-3
T_COARSE_STEP = 0.01
V_COARSE_STEP = 0.05
XI_BISECT_TOL = 1e-5
XI_SEARCH_MAX = 0.05
DISTANCE_BISECT_TOL = 0.01
DISTANCE_SEARCH_MAX = 200.0

TPolicy = Union[float, Literal["optimize"]]


@dataclass(frozen=True)
class OptimizationOutcome:
    arg_opt: float
    value_opt: float
    feasible: bool
    evaluations: int


def strict_t_upper(alpha_sq: float) -> float:
    """Largest transmittance keeping the post-catalysis modulated variance
    below the Gaussian-equivalence bound: T < 0.5 / (V - 1)."""
    if alpha_sq <= 0.0:
        return 1.0
    return min(1.0, 0.25 / alpha_sq)


class _Tracker:
    """Evaluation counter holding the incumbent; ties go to the smaller arg."""

    def __init__(self, fun: Callable[[float], float]):
        self._fun = fun
        self.evaluations = 0
        self.best_arg = math.nan
        self.best_val = -math.inf
        self.any_finite = False

    def __call__(self, x: float) -> float:
        v = self._fun(x)
        self.evaluations += 1
        if math.isfinite(v):
            self.any_finite = True
        else:
            v = -math.inf
        if v > self.best_val or (v == self.best_val and x < self.best_arg):
            self.best_arg, self.best_val = x, v
        return v


def _maximize_scalar(
    fun: Callable[[float], float], lo: float, hi: float, coarse_step: float, tol: float
) -> tuple[float, float, int]:
    probe = _Tracker(fun)
    n = max(1, int(round((hi - lo) / coarse_step)))
    xs = [lo + (hi - lo) * i / n for i in range(n + 1)]
    vals = [probe(x) for x in xs]
    if not probe.any_finite:
        raise EvaluationError("objective non-finite over the whole coarse grid")
    i_best = min(range(n + 1), key=lambda i: (-vals[i], xs[i]))
    a, b = xs[max(i_best - 1, 0)], xs[min(i_best + 1, n)]
    c = b - (b - a) * _INV_PHI
    d = a + (b - a) * _INV_PHI
    fc, fd = probe(c), probe(d)
    while (b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - (b - a) * _INV_PHI
            fc = probe(c)
        else:
            a, c, fc = c, d, fd
            d = a + (b - a) * _INV_PHI
            fd = probe(d)
    return probe.best_arg, probe.best_val, probe.evaluations


def maximize_over_t(
    alpha_sq: float,
    scenario: ChannelScenario,
    beta: float,
    t_range: tuple[float, float] = (0.01, 1.0),
) -> OptimizationOutcome:
    """Maximize the key rate over the catalysis transmittance."""
    lo, hi = t_range
    if not 0.0 < lo < hi <= 1.0:
        raise DomainError(f"t_range must satisfy 0 < lo < hi <= 1, got {t_range!r}")

    def objective(t: float) -> float:
        return secret_key_rate(alpha_sq, t, scenario, beta).key_rate

    arg, val, evals = _maximize_scalar(objective, lo, hi, T_COARSE_STEP, T_REFINE_TOL)
    return OptimizationOutcome(arg, val, val > 0.0, evals)


def maximize_over_v(
    t_policy: TPolicy,
    scenario: ChannelScenario,
    beta: float,
    v_range: tuple[float, float] = (1.05, 8.0),
) -> OptimizationOutcome:
    """Maximize the key rate over the source variance V = 1 + 2 alpha^2.

    ``t_policy`` is either a fixed transmittance or ``"optimize"``, in which
    case every V evaluation runs a full transmittance search.
    """
    lo, hi = v_range
    if not 1.0 < lo < hi <= 8.0:
        raise DomainError(f"v_range must satisfy 1 < lo < hi <= 8, got {v_range!r}")
    if t_policy != "optimize" and not (
        isinstance(t_policy, (int, float)) and 0.0 < float(t_policy) <= 1.0
    ):
        raise DomainError(f"t_policy must be 'optimize' or a T in (0, 1], got {t_policy!r}")

    inner_evals = 0

    def objective(v: float) -> float:
        nonlocal inner_evals
        alpha_sq = (v - 1.0) / 2.0
        if t_policy == "optimize":
            sub = maximize_over_t(alpha_sq, scenario, beta)
            inner_evals += sub.evaluations
            return sub.value_opt
        return secret_key_rate(alpha_sq, float(t_policy), scenario, beta).key_rate

    arg, val, evals = _maximize_scalar(objective, lo, hi, V_COARSE_STEP, V_REFINE_TOL)
    return OptimizationOutcome(arg, val, val > 0.0, evals + inner_evals)


def _optimized_rate(
    v: float, protocol: str, scenario: ChannelScenario, beta: float
) -> float:
    alpha_sq = (v - 1.0) / 2.0
    if protocol == "original":
        return secret_key_rate(alpha_sq, 1.0, scenario, beta).key_rate
    if protocol == "zpc":
        return maximize_over_t(alpha_sq, scenario, beta).value_opt
    raise DomainError(f"unknown protocol {protocol!r}; expected 'zpc' or 'original'")


def noise_threshold(
    v: float, protocol: str, scenario: ChannelScenario, beta: float
) -> float:
    """Largest excess noise (applied jointly to both fibers) with a positive
    optimized key rate, by bisection on [0, 0.05] to 1e-5.

    Returns 0 if the rate is already non-positive at zero noise, and the
    search cap 0.05 if it is still positive there.
    """

    def rate(xi: float) -> float:
        return _optimized_rate(
            v, protocol, dataclasses.replace(scenario, xi_a=xi, xi_b=xi), beta
        )

    lo, hi = 0.0, XI_SEARCH_MAX
    if rate(lo) <= 0.0:
        return 0.0
    if rate(hi) > 0.0:
        return hi
    while hi - lo > XI_BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if rate(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def max_distance(
    v: float,
    protocol: str,
    xi: float,
    beta: float,
    case: str,
    kappa: float = DEFAULT_KAPPA_DB_PER_KM,
) -> float:
    """Largest end-to-end distance (km) with a positive optimized key rate,
    by bisection on [0, 200] km to 0.01 km.

    Returns 0 if the rate is non-positive at zero distance, and the search
    cap 200 if it is still positive there.
    """

    def rate(distance: float) -> float:
        scen = ChannelScenario.for_case(case, distance, xi, kappa)
        return _optimized_rate(v, protocol, scen, beta)

    lo, hi = 0.0, DISTANCE_SEARCH_MAX
    if rate(lo) <= 0.0:
        return 0.0
    if rate(hi) > 0.0:
        return hi
    while hi - lo > DISTANCE_BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if rate(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
