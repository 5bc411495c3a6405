"""Reduction of the two-channel relay topology to an equivalent one-way link.

Both parties send one mode of their source to an untrusted relay over fibers
of loss ``kappa`` dB/km; the relay interferes them, measures conjugate
quadratures, and announces the outcomes, after which the receiver displaces
the kept mode with gain g.  For security analysis this is equivalent to a
single one-way channel with transmittance

    T_C = g^2 T_A / 2

and excess noise (referred to the channel input, in SNU)

    eps_th = 1 + chi_A + (T_B/T_A) [ (chi_B - 1)
             + ( sqrt(2 (V_B - 1) / (g^2 T_B)) - sqrt(V_B + 1) )^2 ],

where chi_j = (1 - T_j)/T_j + xi_j.  The quadratic term vanishes at the gain
choice g^2 = 2 (V_B - 1) / ((V_B + 1) T_B), which minimizes eps_th to

    eps_th = (T_B/T_A)(chi_B - 1) + 1 + chi_A.

The pipeline always uses the minimized form; the general form is kept for
verifying the optimality of the gain choice.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "ChannelScenario",
    "EquivalentChannel",
    "transmittance_from_distance",
    "chi_line",
    "optimal_gain_sq",
    "excess_noise_at_gain",
    "equivalent_channel",
]

DEFAULT_KAPPA_DB_PER_KM = 0.2


def transmittance_from_distance(length_km: float, kappa: float) -> float:
    """Fiber transmittance 10^(-kappa * L / 10) for L km at kappa dB/km."""
    if not math.isfinite(length_km) or length_km < 0.0:
        raise DomainError(f"length_km must be finite and >= 0, got {length_km!r}")
    if not math.isfinite(kappa) or kappa <= 0.0:
        raise DomainError(f"kappa must be finite and > 0, got {kappa!r}")
    return 10.0 ** (-kappa * length_km / 10.0)


def chi_line(t_line: float, xi: float) -> float:
    """Input-referred line noise (1 - T)/T + xi of a single fiber."""
    if not math.isfinite(t_line) or not 0.0 < t_line <= 1.0:
        raise DomainError(f"t_line must lie in (0, 1], got {t_line!r}")
    if not math.isfinite(xi) or xi < 0.0:
        raise DomainError(f"xi must be finite and >= 0, got {xi!r}")
    return (1.0 - t_line) / t_line + xi


def optimal_gain_sq(v_b: float, t_b: float) -> float:
    """Displacement gain squared 2(V_B - 1) / ((V_B + 1) T_B) minimizing the
    equivalent excess noise."""
    if not math.isfinite(v_b) or v_b <= 1.0:
        raise DomainError(f"v_b must be > 1, got {v_b!r}")
    if not math.isfinite(t_b) or not 0.0 < t_b <= 1.0:
        raise DomainError(f"t_b must lie in (0, 1], got {t_b!r}")
    return 2.0 * (v_b - 1.0) / ((v_b + 1.0) * t_b)


@dataclass(frozen=True)
class ChannelScenario:
    """Physical layout: fiber lengths to the relay, loss, and excess noises.

    ``l_bc = 0`` is the extreme asymmetric case (relay at the receiver);
    ``l_ac = l_bc`` is the symmetric case (relay midway).
    """

    l_ac: float
    l_bc: float
    xi_a: float
    xi_b: float
    kappa: float = DEFAULT_KAPPA_DB_PER_KM

    def __post_init__(self):
        for name in ("l_ac", "l_bc"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0.0:
                raise DomainError(f"{name} must be finite and >= 0, got {v!r}")
        for name in ("xi_a", "xi_b"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0.0:
                raise DomainError(f"{name} must be finite and >= 0, got {v!r}")
        if not math.isfinite(self.kappa) or self.kappa <= 0.0:
            raise DomainError(f"kappa must be finite and > 0, got {self.kappa!r}")

    @property
    def t_a(self) -> float:
        return transmittance_from_distance(self.l_ac, self.kappa)

    @property
    def t_b(self) -> float:
        return transmittance_from_distance(self.l_bc, self.kappa)

    @property
    def is_extreme_asymmetric(self) -> bool:
        return self.l_bc == 0.0

    @property
    def is_symmetric(self) -> bool:
        return self.l_ac == self.l_bc

    @classmethod
    def for_case(
        cls,
        case: str,
        distance_km: float,
        xi: float,
        kappa: float = DEFAULT_KAPPA_DB_PER_KM,
    ) -> "ChannelScenario":
        """Build a scenario from an end-to-end sender-receiver distance.

        ``asymmetric`` places the relay at the receiver (l_ac = distance,
        l_bc = 0); ``symmetric`` places it midway (each leg distance / 2).
        """
        key = case.lower()
        if key in ("asymmetric", "asym"):
            return cls(l_ac=distance_km, l_bc=0.0, xi_a=xi, xi_b=xi, kappa=kappa)
        if key in ("symmetric", "sym"):
            half = distance_km / 2.0
            return cls(l_ac=half, l_bc=half, xi_a=xi, xi_b=xi, kappa=kappa)
        raise DomainError(f"unknown case {case!r}; expected asymmetric or symmetric")


@dataclass(frozen=True)
class EquivalentChannel:
    """One-way reduction: gain, transmittance, excess noise, total noise."""

    g_sq: float
    t_c: float
    eps_th: float
    chi_t: float


def excess_noise_at_gain(scenario: ChannelScenario, v_b: float, g_sq: float) -> float:
    """Equivalent excess noise for an arbitrary displacement gain squared."""
    if not math.isfinite(g_sq) or g_sq <= 0.0:
        raise DomainError(f"g_sq must be > 0, got {g_sq!r}")
    if not math.isfinite(v_b) or v_b <= 1.0:
        raise DomainError(f"v_b must be > 1, got {v_b!r}")
    t_a, t_b = scenario.t_a, scenario.t_b
    chi_a = chi_line(t_a, scenario.xi_a)
    chi_b = chi_line(t_b, scenario.xi_b)
    quad = (math.sqrt(2.0 * (v_b - 1.0) / (g_sq * t_b)) - math.sqrt(v_b + 1.0)) ** 2
    return 1.0 + chi_a + (t_b / t_a) * (chi_b - 1.0 + quad)


def equivalent_channel(scenario: ChannelScenario, v_b: float) -> EquivalentChannel:
    """One-way reduction at the noise-minimizing displacement gain."""
    t_a, t_b = scenario.t_a, scenario.t_b
    g_sq = optimal_gain_sq(v_b, t_b)
    t_c = g_sq * t_a / 2.0
    chi_a = chi_line(t_a, scenario.xi_a)
    chi_b = chi_line(t_b, scenario.xi_b)
    eps_th = (t_b / t_a) * (chi_b - 1.0) + 1.0 + chi_a
    chi_t = (1.0 - t_c) / t_c + eps_th
    return EquivalentChannel(g_sq=g_sq, t_c=t_c, eps_th=eps_th, chi_t=chi_t)
