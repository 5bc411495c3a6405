import math

import numpy as np
import pytest

from mdicvqkd import (
    ChannelScenario,
    DomainError,
    EquivalentChannel,
    PhysicalityError,
    TwoModeCovariance,
    conditional_eigenvalue,
    covariance_ab,
    equivalent_channel,
    g_function,
    holevo_bound,
    modulation_state,
    mutual_information,
    plob_bound,
    secret_key_rate,
    symplectic_eigenvalues,
)

# Frozen from an independent scripted evaluation of the full chain.
COV_PIN = dict(a=1.4125, b=1.05703274672028, c=0.36147537674569)
T_C_PIN = 0.135526185435788
CHI_T_PIN = 6.38697242904656
K_ZPC_25KM = 0.0044949493675665
K_ORIG_25KM = 0.00217021681945554
K_ZPC_35KM_T0258 = 0.00150327734781577
PLOB_25KM = 0.548412254608164


def asym(l_ac, xi=0.002):
    return ChannelScenario(l_ac=l_ac, l_bc=0.0, xi_a=xi, xi_b=xi)


def tmsv(v):
    return TwoModeCovariance(v, v, math.sqrt(v * v - 1.0))


class TestGFunction:
    def test_values(self):
        assert g_function(0.0) == 0.0
        assert g_function(1.0) == 2.0
        assert g_function(3.0) == pytest.approx(8.0 - 3.0 * math.log2(3.0), abs=1e-12)

    def test_clamp_and_domain(self):
        assert g_function(-1e-12) == 0.0
        with pytest.raises(DomainError):
            g_function(-1e-6)


class TestMutualInformation:
    def test_no_correlation(self):
        assert mutual_information(TwoModeCovariance(1.4, 1.2, 0.0)) == 0.0

    def test_sign_invariance(self):
        plus = mutual_information(TwoModeCovariance(2.0, 2.0, 1.0))
        minus = mutual_information(TwoModeCovariance(2.0, 2.0, -1.0))
        assert plus == minus

    def test_direct_value(self):
        got = mutual_information(TwoModeCovariance(2.0, 2.0, 1.0))
        assert got == pytest.approx(math.log2(9.0 / 8.0), abs=1e-15)


class TestSymplecticEigenvalues:
    def test_product_state(self):
        assert symplectic_eigenvalues(TwoModeCovariance(1.4, 1.2, 0.0)) == pytest.approx(
            (1.4, 1.2), abs=1e-14
        )
        assert symplectic_eigenvalues(TwoModeCovariance(1.2, 1.4, 0.0)) == pytest.approx(
            (1.4, 1.2), abs=1e-14
        )

    def test_pure_two_mode_squeezed(self):
        nu1, nu2 = symplectic_eigenvalues(tmsv(2.5))
        assert nu1 == pytest.approx(1.0, abs=1e-7)
        assert nu2 == pytest.approx(1.0, abs=1e-7)

    def test_hand_check(self):
        nu1, nu2 = symplectic_eigenvalues(TwoModeCovariance(1.4, 1.2, 0.5))
        assert nu1 == pytest.approx(1.3, abs=1e-12)
        assert nu2 == pytest.approx(1.1, abs=1e-12)

    def test_unphysical_rejected(self):
        with pytest.raises(PhysicalityError):
            symplectic_eigenvalues(TwoModeCovariance(1.0, 1.0, 0.9))

    def test_invariants_random(self):
        """nu1^2 nu2^2 = zeta^2 and nu1^2 + nu2^2 = theta over random
        physical covariances."""
        rng = np.random.default_rng(11)
        for _ in range(10_000):
            a, b = rng.uniform(1.0, 10.0, size=2)
            u_max = a * b - 1.0 - abs(a - b)
            c = math.copysign(
                math.sqrt(rng.uniform(0.0, max(u_max, 0.0)) * 0.999), rng.uniform(-1, 1)
            )
            cov = TwoModeCovariance(a, b, c)
            nu1, nu2 = symplectic_eigenvalues(cov)
            theta = a * a + b * b - 2.0 * c * c
            zeta = a * b - c * c
            assert nu1 * nu1 * nu2 * nu2 == pytest.approx(zeta * zeta, rel=1e-9)
            assert nu1 * nu1 + nu2 * nu2 == pytest.approx(theta, rel=1e-9)


class TestConditionalEigenvalue:
    def test_no_correlation(self):
        got = conditional_eigenvalue(TwoModeCovariance(1.4, 1.2, 0.0))
        assert got == pytest.approx(1.4, abs=1e-15)

    def test_pure_two_mode_squeezed(self):
        assert conditional_eigenvalue(tmsv(2.5)) == pytest.approx(1.0, abs=1e-12)

    def test_hand_check(self):
        got = conditional_eigenvalue(TwoModeCovariance(1.4, 1.2, 0.5))
        assert got == pytest.approx(2.83 / 2.2, abs=1e-12)


class TestHolevoBound:
    def test_pure_state_leaks_nothing(self):
        assert holevo_bound(tmsv(2.5)) == 0.0

    def test_uncorrelated_vacuum_sender(self):
        cov = TwoModeCovariance(1.0, 1.8, 0.0)
        assert holevo_bound(cov) == pytest.approx(g_function(0.4), abs=1e-12)

    def test_composition(self):
        cov = TwoModeCovariance(1.4, 1.2, 0.5)
        expected = g_function(0.15) + g_function(0.05) - g_function((2.83 / 2.2 - 1) / 2)
        assert holevo_bound(cov) == pytest.approx(expected, abs=1e-12)

    def test_nonnegative_on_random_covariances(self):
        rng = np.random.default_rng(13)
        for _ in range(2000):
            a, b = rng.uniform(1.0, 6.0, size=2)
            u_max = a * b - 1.0 - abs(a - b)
            c = math.sqrt(rng.uniform(0.0, max(u_max, 0.0)) * 0.999)
            assert holevo_bound(TwoModeCovariance(a, b, c)) >= 0.0


class TestCovarianceAb:
    def test_zero_correlation_source(self):
        eq = equivalent_channel(asym(25.0), 2.5)
        assert covariance_ab(1.4125, 0.0, eq).c == 0.0

    def test_identity_channel_limit(self):
        eq = EquivalentChannel(g_sq=2.0, t_c=1.0, eps_th=0.0, chi_t=0.0)
        cov = covariance_ab(1.4, 0.9, eq)
        assert (cov.a, cov.b, cov.c) == (1.4, 1.4, 0.9)

    def test_pinned_regression_triple(self):
        eq = equivalent_channel(asym(25.0), 2.5)
        state = modulation_state(0.275 * 0.75)
        cov = covariance_ab(state.x_var, state.z4, eq)
        assert eq.t_c == pytest.approx(T_C_PIN, rel=1e-12)
        assert eq.chi_t == pytest.approx(CHI_T_PIN, rel=1e-12)
        assert cov.a == pytest.approx(COV_PIN["a"], abs=1e-12)
        assert cov.b == pytest.approx(COV_PIN["b"], rel=1e-12)
        assert cov.c == pytest.approx(COV_PIN["c"], rel=1e-12)

    def test_domain(self):
        eq = equivalent_channel(asym(25.0), 2.5)
        with pytest.raises(DomainError):
            covariance_ab(0.9, 0.0, eq)


class TestPlobBound:
    def test_half_transmittance(self):
        distance = 10.0 * math.log10(2.0) / 0.2  # eta = 1/2
        assert plob_bound(asym(distance)) == pytest.approx(1.0, abs=1e-12)

    def test_pinned(self):
        assert plob_bound(asym(25.0)) == pytest.approx(PLOB_25KM, abs=1e-12)

    def test_split_line_counts_both_legs(self):
        sym = ChannelScenario(l_ac=12.5, l_bc=12.5, xi_a=0.0, xi_b=0.0)
        assert plob_bound(sym) == pytest.approx(PLOB_25KM, abs=1e-12)

    def test_divergence(self):
        with pytest.raises(DomainError):
            plob_bound(ChannelScenario(l_ac=0.0, l_bc=0.0, xi_a=0.0, xi_b=0.0))


def original_rate(alpha_sq, scenario, beta):
    """Uncatalysed protocol assembled step by step, bypassing the catalysis
    code path entirely."""
    state = modulation_state(alpha_sq)
    eq = equivalent_channel(scenario, 1.0 + 2.0 * alpha_sq)
    cov = covariance_ab(state.x_var, state.z4, eq)
    return beta * mutual_information(cov) - holevo_bound(cov)


class TestSecretKeyRate:
    def test_no_modulation(self):
        res = secret_key_rate(0.0, 0.5, asym(25.0), 0.95)
        assert res.key_rate == 0.0
        assert res.i_ab == 0.0
        assert res.cov.c == 0.0
        assert res.key_rate <= 0.0

    def test_pinned_values(self):
        res = secret_key_rate(0.75, 0.275, asym(25.0), 0.95)
        assert res.key_rate == pytest.approx(K_ZPC_25KM, rel=1e-10)
        assert res.p_d == pytest.approx(math.exp(-0.54375), abs=1e-15)
        orig = secret_key_rate(0.2, 1.0, asym(25.0), 0.95)
        assert orig.key_rate == pytest.approx(K_ORIG_25KM, rel=1e-10)
        assert orig.p_d == 1.0
        far = secret_key_rate(0.75, 0.258, asym(35.0), 0.95)
        assert far.key_rate == pytest.approx(K_ZPC_35KM_T0258, rel=1e-10)
        assert far.key_rate > 0.0

    def test_result_identity(self):
        res = secret_key_rate(0.75, 0.275, asym(25.0), 0.95)
        assert res.key_rate == pytest.approx(
            res.p_d * (res.beta * res.i_ab - res.chi_be), rel=1e-14
        )
        assert res.nu1 >= res.nu2
        assert res.vm_out == pytest.approx(2.0 * 0.275 * 0.75, abs=1e-15)
        assert res.within_bound

    def test_reduction_identity_random(self):
        rng = np.random.default_rng(2024)
        for _ in range(100):
            alpha_sq = rng.uniform(0.05, 1.2)
            l_ac = rng.uniform(0.0, 60.0)
            l_bc = rng.choice([0.0, l_ac])
            xi = rng.uniform(0.0, 0.01)
            beta = rng.uniform(0.5, 1.0)
            scen = ChannelScenario(l_ac=l_ac, l_bc=l_bc, xi_a=xi, xi_b=xi)
            via_catalysis = secret_key_rate(alpha_sq, 1.0, scen, beta).key_rate
            assert abs(via_catalysis - original_rate(alpha_sq, scen, beta)) < 1e-12

    def test_monotone_in_noise(self):
        rates = [
            secret_key_rate(0.75, 0.275, asym(25.0, xi), 0.95).key_rate
            for xi in np.arange(0.001, 0.0101, 0.001)
        ]
        assert all(k1 >= k2 for k1, k2 in zip(rates, rates[1:]))

    def test_monotone_in_beta(self):
        rates = [
            secret_key_rate(0.75, 0.275, asym(25.0), b).key_rate
            for b in np.linspace(0.5, 1.0, 11)
        ]
        assert all(k1 < k2 for k1, k2 in zip(rates, rates[1:]))

    def test_beta_domain(self):
        with pytest.raises(DomainError):
            secret_key_rate(0.75, 0.275, asym(25.0), 0.0)
        with pytest.raises(DomainError):
            secret_key_rate(0.75, 0.275, asym(25.0), 1.5)
