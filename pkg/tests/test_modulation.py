import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mdicvqkd import (
    DomainError,
    correlation_z4,
    correlation_zg,
    lambda_coeffs,
    modulation_state,
    variance_x,
)

# Frozen from the truncated-photon-number oracle at cutoff 40.
LAMBDA_02 = (0.81878533518017, 0.16374833389876, 0.0163746878376497, 0.00109164308342059)
LAMBDA_075 = (0.478595214371557, 0.355209135606334, 0.132969865702658, 0.0332257843194515)
Z4_PINS = {
    0.1: 0.658160367601491,
    0.2: 0.964874929359235,
    0.5: 1.65541903616118,
    0.75: 2.1162869948772,
    1.0: 2.51970509731507,
}


class TestLambdaCoeffs:
    def test_vacuum(self):
        assert np.array_equal(lambda_coeffs(0.0), [1.0, 0.0, 0.0, 0.0])

    def test_pinned_values(self):
        assert lambda_coeffs(0.2) == pytest.approx(LAMBDA_02, abs=1e-9)
        assert lambda_coeffs(0.75) == pytest.approx(LAMBDA_075, abs=1e-9)

    def test_normalization_random(self):
        rng = np.random.default_rng(20240601)
        for a in rng.uniform(0.0, 2.0, size=1000):
            assert abs(lambda_coeffs(a).sum() - 1.0) < 1e-12

    @given(st.floats(min_value=0.0, max_value=2.0, allow_nan=False))
    def test_nonnegative_and_normalized(self, a):
        lam = lambda_coeffs(a)
        assert np.all(lam >= 0.0)
        assert abs(lam.sum() - 1.0) < 1e-12

    @pytest.mark.parametrize("bad", [-0.1, math.nan, math.inf])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            lambda_coeffs(bad)


class TestVarianceX:
    def test_values(self):
        assert variance_x(0.0) == 1.0
        assert variance_x(0.2) == 1.4
        assert variance_x(0.75) == 2.5

    def test_domain(self):
        with pytest.raises(DomainError):
            variance_x(-1.0)


class TestCorrelationZ4:
    def test_zero_limit(self):
        assert correlation_z4(0.0) == 0.0

    def test_pinned_values(self):
        for a, z in Z4_PINS.items():
            assert correlation_z4(a) == pytest.approx(z, abs=1e-9)

    def test_small_modulation_approaches_gaussian(self):
        # ratio to the Gaussian correlation tends to 1 from below
        assert correlation_z4(1e-3) / correlation_zg(variance_x(1e-3)) >= 0.999
        for a in [1e-4, 1e-3, 3e-3, 1e-2]:
            ratio = correlation_z4(a) / correlation_zg(variance_x(a))
            assert ratio >= 1.0 - 10.0 * a

    def test_strictly_sub_gaussian(self):
        for a in np.arange(1e-3, 1.5 + 1e-9, 1e-3):
            assert correlation_z4(a) < correlation_zg(variance_x(a))


class TestCorrelationZg:
    def test_values(self):
        assert correlation_zg(1.0) == 0.0
        assert correlation_zg(1.4) == pytest.approx(math.sqrt(0.96), abs=1e-15)
        assert correlation_zg(2.5) == pytest.approx(math.sqrt(5.25), abs=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            correlation_zg(0.99)


class TestModulationState:
    def test_bundles_components(self):
        st_ = modulation_state(0.2)
        assert st_.x_var == variance_x(0.2)
        assert st_.z4 == correlation_z4(0.2)
        assert np.array_equal(st_.lambdas, lambda_coeffs(0.2))

    def test_vacuum_is_identity_covariance(self):
        assert np.array_equal(modulation_state(0.0).covariance(), np.eye(4))

    def test_covariance_layout(self):
        st_ = modulation_state(0.75)
        cov = st_.covariance()
        assert cov.shape == (4, 4)
        assert np.array_equal(cov, cov.T)
        assert cov[0, 0] == cov[2, 2] == 2.5
        assert cov[0, 2] == -cov[1, 3] == st_.z4
        # positive definite for a physical state
        assert np.linalg.eigvalsh(cov).min() > 0.0
