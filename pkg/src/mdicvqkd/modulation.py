"""Statistics of the four-state discrete-modulation ensemble.

The sender draws one of four coherent states ``alpha * exp(i(2l+1)pi/4)``
with equal probability.  The entanglement-based description of that source is
a two-mode pure state whose reduced states decompose over the four
photon-number residue classes mod 4, with weights

    lambda_0 = e^{-a}/2 (cosh a + cos a),   lambda_2 = e^{-a}/2 (cosh a - cos a),
    lambda_1 = e^{-a}/2 (sinh a + sin a),   lambda_3 = e^{-a}/2 (sinh a - sin a),

where ``a = alpha^2``.  Its covariance matrix in shot-noise units (vacuum
quadrature variance 1, quadrature x = a + a^dag) is

    [[X I2, Z4 sz], [Z4 sz, X I2]],  X = 1 + 2 alpha^2,
    Z4 = 2 alpha^2 * sum_k lambda_{k-1}^{3/2} lambda_k^{-1/2}   (indices mod 4).

Z4 is strictly below the two-mode-squeezed-vacuum correlation
ZG = sqrt(X^2 - 1); the gap is what distinguishes discrete from Gaussian
modulation in the security analysis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

__all__ = [
    "ModulationState",
    "lambda_coeffs",
    "variance_x",
    "correlation_z4",
    "correlation_zg",
    "modulation_state",
]


def _check_alpha_sq(alpha_sq: float) -> float:
    if not math.isfinite(alpha_sq) or alpha_sq < 0.0:
        raise DomainError(f"alpha_sq must be finite and >= 0, got {alpha_sq!r}")
    return float(alpha_sq)


def _series_quartic(a: float, offset: int) -> float:
    """sum_k a^(4k+offset) / (4k+offset)!  (offset 2 or 3, a < 0.5)."""
    term = a**offset / math.factorial(offset)
    total = term
    n = offset
    for _ in range(12):
        term *= a**4 / ((n + 1.0) * (n + 2.0) * (n + 3.0) * (n + 4.0))
        n += 4
        if term <= total * 1e-20:
            break
        total += term
    return total


def lambda_coeffs(alpha_sq: float) -> np.ndarray:
    """Weights of the four residue-class components, summing to one.

    The even pair comes from (cosh a +/- cos a), the odd pair from
    (sinh a +/- sin a).  For small a the minus combinations cancel
    catastrophically, so they are evaluated by their quartic-exponent
    series instead.
    """
    a = _check_alpha_sq(alpha_sq)
    if a == 0.0:
        return np.array([1.0, 0.0, 0.0, 0.0])
    e = math.exp(-a)
    l0 = 0.5 * e * (math.cosh(a) + math.cos(a))
    l1 = 0.5 * e * (math.sinh(a) + math.sin(a))
    if a < 0.5:
        l2 = e * _series_quartic(a, 2)
        l3 = e * _series_quartic(a, 3)
    else:
        l2 = 0.5 * e * (math.cosh(a) - math.cos(a))
        l3 = 0.5 * e * (math.sinh(a) - math.sin(a))
    return np.array([l0, l1, l2, l3])


def variance_x(alpha_sq: float) -> float:
    """Quadrature variance of either mode, ``1 + 2 alpha^2`` (SNU)."""
    a = _check_alpha_sq(alpha_sq)
    return 1.0 + 2.0 * a


def correlation_z4(alpha_sq: float) -> float:
    """Cross-correlation of the four-state source (SNU).

    Cyclic index convention: the weight below lambda_0 is lambda_3.
    The alpha -> 0 limit is 0 and is returned exactly at alpha_sq = 0,
    avoiding the 0^(-1/2) singularity of the odd weights.
    """
    a = _check_alpha_sq(alpha_sq)
    if a == 0.0:
        return 0.0
    if a < 1e-12:
        # Z4 = 2 sqrt(a) (1 + (sqrt(2)-1) a + O(a^2)); the a^2 term is below
        # float resolution here, while the odd weights underflow the direct sum
        return 2.0 * math.sqrt(a) * (1.0 + (math.sqrt(2.0) - 1.0) * a)
    lam = lambda_coeffs(a)
    s = 0.0
    for k in range(4):
        prev, cur = lam[(k - 1) % 4], lam[k]
        s += prev * math.sqrt(prev / cur)
    return float(2.0 * a * s)


def correlation_zg(x_var: float) -> float:
    """Correlation sqrt(x_var^2 - 1) of a two-mode squeezed vacuum with the
    same quadrature variance."""
    if not math.isfinite(x_var) or x_var < 1.0:
        raise DomainError(f"x_var must be >= 1, got {x_var!r}")
    return math.sqrt((x_var - 1.0) * (x_var + 1.0))


@dataclass(frozen=True)
class ModulationState:
    """Second-moment summary of the two-mode source state.

    Attributes
    ----------
    alpha_sq : float
        Coherent amplitude squared (half the modulated variance).
    lambdas : np.ndarray
        The four residue-class weights.
    x_var : float
        Quadrature variance X of either mode (SNU).
    z4 : float
        Cross-correlation Z4 (SNU).
    """

    alpha_sq: float
    lambdas: np.ndarray
    x_var: float
    z4: float

    def covariance(self) -> np.ndarray:
        """Full 4x4 covariance matrix [[X I2, Z4 sz], [Z4 sz, X I2]]."""
        x, z = self.x_var, self.z4
        return np.array(
            [
                [x, 0.0, z, 0.0],
                [0.0, x, 0.0, -z],
                [z, 0.0, x, 0.0],
                [0.0, -z, 0.0, x],
            ]
        )


def modulation_state(alpha_sq: float) -> ModulationState:
    """Bundle the class weights and covariance entries for one alpha^2."""
    a = _check_alpha_sq(alpha_sq)
    return ModulationState(
        alpha_sq=a,
        lambdas=lambda_coeffs(a),
        x_var=variance_x(a),
        z4=correlation_z4(a),
    )
