"""Truncated-Fock-space verification of the closed-form statistics.

This module rebuilds the four-state source from its photon-number series and
recovers the class weights, covariance entries, and catalysis success
probability by plain linear algebra.  It never calls the closed forms in
:mod:`mdicvqkd.modulation`; agreement between the two routes is what the test
suite checks.

Construction: the two-mode source state is sum_l u_l (x) u_l / ||u_l||, where
the branch vector u_l lives on photon numbers n = 4m + l with amplitudes

    u_l[4m + l] = e^{-alpha^2/2} (-1)^m alpha^{4m+l} / sqrt((4m+l)!).

Branches occupy disjoint residue classes mod 4 and are exactly orthogonal;
the squared branch norms are the class weights.

Catalysis acts on the sent mode as the diagonal sqrt(T)^(n).  On each
coherent branch this is exact noiseless attenuation to the reduced amplitude,
with an l-independent success probability, so the conditional traveling
ensemble is exactly the four-state ensemble at T * alpha^2.  Note that the
kept mode of the post-selected entangled state retains its original branch
vectors; its second moments approach, but do not equal, the rescaled-source
values (the model used by the production pipeline).  ``apply_zpc_oracle``
exposes the exact state so tests can measure that modeling gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, TruncationError

__all__ = [
    "TruncatedState",
    "build_phi4",
    "coherent_state",
    "branch_weights",
    "quadrature_moment",
    "apply_zpc_oracle",
]

DEFAULT_CUTOFF = 40
MAX_ALPHA_SQ = 2.0


@dataclass(frozen=True)
class TruncatedState:
    """State vector in a truncated photon-number basis.

    ``amplitudes`` is 1-D for a single mode or 2-D (kept index first, sent
    index second) for the two-mode source.
    """

    dim: int
    amplitudes: np.ndarray
    norm_sq: float


def _coherent_amps(alpha: float, n_cut: int) -> np.ndarray:
    c = np.zeros(n_cut)
    c[0] = math.exp(-alpha * alpha / 2.0)
    for n in range(1, n_cut):
        c[n] = c[n - 1] * alpha / math.sqrt(n)
    return c


def _check_cutoff(alpha_sq: float, n_cut: int) -> None:
    if alpha_sq < 0.0 or alpha_sq > MAX_ALPHA_SQ:
        raise DomainError(f"alpha_sq must lie in [0, {MAX_ALPHA_SQ}], got {alpha_sq!r}")
    needed = 4 * math.ceil(alpha_sq) + 24
    if n_cut < needed:
        raise TruncationError(f"n_cut={n_cut} below the tail bound {needed}")


def coherent_state(alpha: float, n_cut: int = DEFAULT_CUTOFF) -> TruncatedState:
    """Single-mode coherent state of real amplitude alpha."""
    _check_cutoff(alpha * alpha, n_cut)
    amps = _coherent_amps(alpha, n_cut)
    return TruncatedState(dim=n_cut, amplitudes=amps, norm_sq=float(amps @ amps))


def build_phi4(alpha_sq: float, n_cut: int = DEFAULT_CUTOFF) -> TruncatedState:
    """Two-mode four-state source built from the photon-number series."""
    _check_cutoff(alpha_sq, n_cut)
    alpha = math.sqrt(alpha_sq)
    signed = _coherent_amps(alpha, n_cut) * np.array(
        [(-1.0) ** (n // 4) for n in range(n_cut)]
    )
    grid = np.zeros((n_cut, n_cut))
    for l in range(4):
        u = np.zeros(n_cut)
        u[l::4] = signed[l::4]
        w = u @ u
        if w > 0.0:
            grid += np.outer(u, u) / math.sqrt(w)
    norm_sq = float(np.sum(grid * grid))
    if abs(norm_sq - 1.0) > 1e-10:
        raise TruncationError(f"truncated norm {norm_sq} deviates from 1 beyond 1e-10")
    return TruncatedState(dim=n_cut, amplitudes=grid, norm_sq=norm_sq)


def branch_weights(state: TruncatedState) -> np.ndarray:
    """Squared amplitude carried by each photon-number residue class mod 4.

    For the two-mode source both indices of a branch share the class."""
    amps = state.amplitudes
    out = np.zeros(4)
    if amps.ndim == 1:
        for l in range(4):
            v = amps[l::4]
            out[l] = v @ v
    else:
        for l in range(4):
            block = amps[l::4, l::4]
            out[l] = np.sum(block * block)
    return out


def _xmat(n_cut: int) -> np.ndarray:
    x = np.zeros((n_cut, n_cut))
    for n in range(n_cut - 1):
        x[n, n + 1] = x[n + 1, n] = math.sqrt(n + 1.0)
    return x


def quadrature_moment(state: TruncatedState, which: str) -> float:
    """Expectation value of a quadrature monomial, x = a + a^dag (SNU).

    ``which`` is one of ``identity`` (the squared norm), ``x_sq_kept``,
    ``x_sq_sent`` (single-mode variances), or ``x_cross`` (the two-mode
    correlation <x x>).  For a single-mode state only ``identity`` and
    ``x_sq_sent`` / ``x_sq_kept`` (equivalent) make sense.
    """
    amps = state.amplitudes
    if which == "identity":
        return float(np.sum(amps * amps))
    x = _xmat(state.dim)
    if amps.ndim == 1:
        if which in ("x_sq_kept", "x_sq_sent"):
            xa = x @ amps
            return float(xa @ xa)
        raise DomainError(f"moment {which!r} undefined for a single-mode state")
    if which == "x_sq_kept":
        return float(np.sum((x @ amps) ** 2))
    if which == "x_sq_sent":
        return float(np.sum((amps @ x) ** 2))
    if which == "x_cross":
        return float(np.sum((x @ amps @ x) * amps))
    raise DomainError(f"unknown moment {which!r}")


def apply_zpc_oracle(
    state: TruncatedState, t_bs: float
) -> tuple[TruncatedState, float]:
    """Apply the catalysis operator sqrt(T)^(n) to the sent mode.

    Returns the renormalized post-selected state and the success probability
    (the squared norm lost to the post-selection).
    """
    if not math.isfinite(t_bs) or not 0.0 < t_bs <= 1.0:
        raise DomainError(f"t_bs must lie in (0, 1], got {t_bs!r}")
    damp = np.sqrt(t_bs) ** np.arange(state.dim)
    if state.amplitudes.ndim == 1:
        post = state.amplitudes * damp
    else:
        post = state.amplitudes * damp[None, :]
    p_success = float(np.sum(post * post))
    if p_success < 1e-15:
        raise DomainError(f"attenuation annihilated the state (p={p_success})")
    post = post / math.sqrt(p_success)
    return TruncatedState(dim=state.dim, amplitudes=post, norm_sq=1.0), p_success
