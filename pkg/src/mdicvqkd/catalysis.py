"""Zero-photon catalysis of the traveling mode.

An ancillary vacuum enters a beam splitter of transmittance T together with
the traveling mode; post-selecting on the ancilla leaving in vacuum applies
the diagonal operator sqrt(T)^(n) to the traveling mode.  On a coherent state
this is noiseless attenuation,

    |alpha>  ->  |sqrt(T) alpha>   with success probability
    P_d = exp(-alpha^2 (1 - T)),

independent of the coherent phase.  Conditioned on success the traveling
four-state ensemble is therefore exactly the ensemble at the reduced
amplitude alpha_tilde = sqrt(T) alpha, so the effective source statistics are
those of :func:`mdicvqkd.modulation.modulation_state` evaluated at
T * alpha^2.  The ``fock`` module verifies both facts from first principles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .modulation import ModulationState, modulation_state

__all__ = ["CatalysisResult", "success_probability", "apply_catalysis"]

#: Advisory bound on the post-catalysis modulated variance below which the
#: discrete ensemble is treated as Gaussian-equivalent.
VM_GAUSSIAN_BOUND = 0.5


def _check_t_bs(t_bs: float) -> float:
    if not math.isfinite(t_bs) or not 0.0 < t_bs <= 1.0:
        raise DomainError(f"t_bs must lie in (0, 1], got {t_bs!r}")
    return float(t_bs)


def success_probability(alpha_sq: float, t_bs: float) -> float:
    """Probability exp(-alpha^2 (1 - T)) that the catalysis post-selection
    succeeds."""
    t = _check_t_bs(t_bs)
    if not math.isfinite(alpha_sq) or alpha_sq < 0.0:
        raise DomainError(f"alpha_sq must be finite and >= 0, got {alpha_sq!r}")
    return math.exp(-alpha_sq * (1.0 - t))


@dataclass(frozen=True)
class CatalysisResult:
    """Outcome of catalysing a four-state source of amplitude alpha_sq_in."""

    t_bs: float
    alpha_sq_in: float
    alpha_sq_out: float
    p_success: float
    state_out: ModulationState

    @property
    def vm_out(self) -> float:
        """Post-catalysis modulated variance 2 * alpha_sq_out."""
        return 2.0 * self.alpha_sq_out

    @property
    def within_bound(self) -> bool:
        """Whether vm_out stays below the Gaussian-equivalence bound 0.5."""
        return self.vm_out < VM_GAUSSIAN_BOUND


def apply_catalysis(alpha_sq: float, t_bs: float) -> CatalysisResult:
    """Catalyse the traveling mode: amplitude rescaling plus success weight.

    With ``t_bs = 1`` the operation is the identity (p_success = 1 and the
    output state equals the input state bit for bit).
    """
    t = _check_t_bs(t_bs)
    p = success_probability(alpha_sq, t)
    return CatalysisResult(
        t_bs=t,
        alpha_sq_in=float(alpha_sq),
        alpha_sq_out=t * alpha_sq,
        p_success=p,
        state_out=modulation_state(t * alpha_sq),
    )
