"""Secret key rate of the catalysed four-state relay protocol.

After the relay measurement and displacement, the joint state of the kept
modes is Gaussian-equivalent with covariance matrix

    [[a I2, c sz], [c sz, b I2]],
    a = X~,  b = T_C (X~ + chi_t),  c = sqrt(T_C) Z4~,

where (X~, Z4~) are the post-catalysis source statistics.  Reverse
reconciliation with efficiency beta against collective Gaussian attacks gives

    K = P_d ( beta I(A:B) - chi(B:E) ),

with the heterodyne-heterodyne mutual information

    I(A:B) = log2[ (a + 1) / (a + 1 - c^2 / (b + 1)) ]

and the Holevo bound chi(B:E) assembled from the entropy function
G(x) = (x+1) log2(x+1) - x log2 x at the symplectic eigenvalues of the joint
and conditional covariance matrices.  The uncatalysed protocol is the exact
special case t_bs = 1 (P_d = 1).

Numerical policy: violations of physicality within 1e-9 are treated as float
noise and clamped; violations beyond 1e-6 raise ``PhysicalityError``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .catalysis import apply_catalysis
from .channel import ChannelScenario, EquivalentChannel, equivalent_channel
from .errors import DomainError, PhysicalityError

__all__ = [
    "TwoModeCovariance",
    "KeyRateResult",
    "covariance_ab",
    "mutual_information",
    "g_function",
    "symplectic_eigenvalues",
    "conditional_eigenvalue",
    "holevo_bound",
    "secret_key_rate",
    "plob_bound",
]

#: Violations up to this size are float noise and get clamped.
CLAMP_TOL = 1e-9
#: Violations beyond this size are genuine errors.
ERROR_TOL = 1e-6


@dataclass(frozen=True)
class TwoModeCovariance:
    """Block-diagonal two-mode covariance (a, b on the diagonal, c sz off it)."""

    a: float
    b: float
    c: float

    def matrix(self) -> np.ndarray:
        a, b, c = self.a, self.b, self.c
        return np.array(
            [
                [a, 0.0, c, 0.0],
                [0.0, a, 0.0, -c],
                [c, 0.0, b, 0.0],
                [0.0, -c, 0.0, b],
            ]
        )


def covariance_ab(
    x_eff: float, z_eff: float, equiv: EquivalentChannel
) -> TwoModeCovariance:
    """Joint covariance after sending the (x_eff, z_eff) source through the
    equivalent channel."""
    if not math.isfinite(x_eff) or x_eff < 1.0:
        raise DomainError(f"x_eff must be >= 1, got {x_eff!r}")
    if not math.isfinite(z_eff) or z_eff < 0.0:
        raise DomainError(f"z_eff must be >= 0, got {z_eff!r}")
    cov = TwoModeCovariance(
        a=x_eff,
        b=equiv.t_c * (x_eff + equiv.chi_t),
        c=math.sqrt(equiv.t_c) * z_eff,
    )
    symplectic_eigenvalues(cov)  # physicality gate
    return cov


def mutual_information(cov: TwoModeCovariance) -> float:
    """Heterodyne-heterodyne Shannon mutual information in bits."""
    a, b, c = cov.a, cov.b, cov.c
    denom = a + 1.0 - c * c / (b + 1.0)
    if denom <= 0.0:
        raise PhysicalityError(f"conditional variance {denom} not positive")
    return math.log2((a + 1.0) / denom)


def g_function(x: float) -> float:
    """Bosonic entropy (x+1) log2(x+1) - x log2 x with 0 log 0 = 0."""
    if not math.isfinite(x) or x < -CLAMP_TOL:
        raise DomainError(f"g_function argument must be >= 0, got {x!r}")
    if x <= 0.0:
        return 0.0
    return (x + 1.0) * math.log2(x + 1.0) - x * math.log2(x)


def _check_eigenvalue(nu: float, what: str) -> float:
    if nu < 1.0 - ERROR_TOL:
        raise PhysicalityError(f"{what} {nu} below 1 beyond tolerance")
    if nu < 1.0:
        if nu >= 1.0 - CLAMP_TOL:
            return 1.0
        return nu  # tiny but unclamped deficit; resolved by g_function's clamp
    return nu


def symplectic_eigenvalues(cov: TwoModeCovariance) -> tuple[float, float]:
    """Symplectic spectrum (nu1 >= nu2) of the joint covariance matrix.

    nu_{1,2}^2 = [theta +/- sqrt(theta^2 - 4 zeta^2)] / 2 with
    theta = a^2 + b^2 - 2 c^2 and zeta = a b - c^2.
    """
    a, b, c = cov.a, cov.b, cov.c
    theta = a * a + b * b - 2.0 * c * c
    zeta = a * b - c * c
    disc = theta * theta - 4.0 * zeta * zeta
    if disc < -CLAMP_TOL:
        raise PhysicalityError(f"negative symplectic discriminant {disc}")
    disc = max(disc, 0.0)
    root = math.sqrt(disc)
    nu1 = math.sqrt((theta + root) / 2.0)
    nu2sq = (theta - root) / 2.0
    if nu2sq < 0.0:
        raise PhysicalityError(f"negative squared eigenvalue {nu2sq}")
    nu2 = math.sqrt(nu2sq)
    return _check_eigenvalue(nu1, "symplectic eigenvalue"), _check_eigenvalue(
        nu2, "symplectic eigenvalue"
    )


def conditional_eigenvalue(cov: TwoModeCovariance) -> float:
    """Symplectic eigenvalue [a(b+1) - c^2] / (b+1) of the sender's covariance
    conditioned on a heterodyne measurement of the receiver's mode."""
    a, b, c = cov.a, cov.b, cov.c
    nu3 = (a * (b + 1.0) - c * c) / (b + 1.0)
    return _check_eigenvalue(nu3, "conditional eigenvalue")


def _holevo(nu1: float, nu2: float, nu3: float) -> float:
    # max() tolerates eigenvalues left unclamped in the (1e-9, 1e-6) gap
    chi = (
        g_function(max(0.0, (nu1 - 1.0) / 2.0))
        + g_function(max(0.0, (nu2 - 1.0) / 2.0))
        - g_function(max(0.0, (nu3 - 1.0) / 2.0))
    )
    if chi < -CLAMP_TOL:
        raise PhysicalityError(f"negative Holevo bound {chi}")
    return max(chi, 0.0)


def holevo_bound(cov: TwoModeCovariance) -> float:
    """Eavesdropper information bound chi(B:E) in bits."""
    nu1, nu2 = symplectic_eigenvalues(cov)
    nu3 = conditional_eigenvalue(cov)
    return _holevo(nu1, nu2, nu3)


@dataclass(frozen=True)
class KeyRateResult:
    """Full record of one key-rate evaluation (rates in bits per pulse)."""

    cov: TwoModeCovariance
    theta: float
    zeta: float
    nu1: float
    nu2: float
    nu3: float
    i_ab: float
    chi_be: float
    p_d: float
    key_rate: float
    beta: float
    t_bs: float
    vm_out: float
    within_bound: bool


def secret_key_rate(
    alpha_sq: float,
    t_bs: float,
    scenario: ChannelScenario,
    beta: float,
) -> KeyRateResult:
    """Asymptotic key rate of the catalysed protocol at one parameter point.

    The pipeline is catalysis -> equivalent channel (gain chosen for the
    uncatalysed receiver variance V = 1 + 2 alpha_sq, identical at both
    stations) -> joint covariance -> information quantities.  ``t_bs = 1``
    reproduces the uncatalysed protocol exactly.  The rate may be negative;
    thresholding is left to callers.
    """
    if not math.isfinite(beta) or not 0.0 < beta <= 1.0:
        raise DomainError(f"beta must lie in (0, 1], got {beta!r}")
    cat = apply_catalysis(alpha_sq, t_bs)
    if alpha_sq == 0.0:
        # No modulation: zero gain, vacuum statistics, no information flow.
        cov = TwoModeCovariance(1.0, 1.0, 0.0)
        return KeyRateResult(
            cov=cov,
            theta=2.0,
            zeta=1.0,
            nu1=1.0,
            nu2=1.0,
            nu3=1.0,
            i_ab=0.0,
            chi_be=0.0,
            p_d=cat.p_success,
            key_rate=0.0,
            beta=beta,
            t_bs=cat.t_bs,
            vm_out=0.0,
            within_bound=True,
        )
    v = 1.0 + 2.0 * alpha_sq
    equiv = equivalent_channel(scenario, v)
    cov = covariance_ab(cat.state_out.x_var, cat.state_out.z4, equiv)
    nu1, nu2 = symplectic_eigenvalues(cov)
    nu3 = conditional_eigenvalue(cov)
    i_ab = mutual_information(cov)
    chi_be = _holevo(nu1, nu2, nu3)
    key = cat.p_success * (beta * i_ab - chi_be)
    if not math.isfinite(key):
        raise PhysicalityError(f"non-finite key rate at alpha_sq={alpha_sq}, t_bs={t_bs}")
    return KeyRateResult(
        cov=cov,
        theta=cov.a**2 + cov.b**2 - 2.0 * cov.c**2,
        zeta=cov.a * cov.b - cov.c**2,
        nu1=nu1,
        nu2=nu2,
        nu3=nu3,
        i_ab=i_ab,
        chi_be=chi_be,
        p_d=cat.p_success,
        key_rate=key,
        beta=beta,
        t_bs=cat.t_bs,
        vm_out=cat.vm_out,
        within_bound=cat.within_bound,
    )


def plob_bound(scenario: ChannelScenario) -> float:
    """Repeaterless secret-key capacity -log2(1 - eta) of the end-to-end
    sender-receiver line (both fiber legs in series)."""
    total = scenario.l_ac + scenario.l_bc
    eta = 10.0 ** (-scenario.kappa * total / 10.0)
    if eta >= 1.0:
        raise DomainError("zero-length line: repeaterless capacity diverges")
    return -math.log2(1.0 - eta)
