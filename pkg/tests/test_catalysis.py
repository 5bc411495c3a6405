import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from mdicvqkd import DomainError, apply_catalysis, modulation_state, success_probability

Z4_020625 = 0.981899664608557  # frozen from the photon-number oracle

alpha_sqs = st.floats(min_value=0.0, max_value=2.0, allow_nan=False)
transmittances = st.floats(min_value=0.05, max_value=1.0, allow_nan=False)


class TestSuccessProbability:
    def test_identity_transmittance(self):
        for a in [0.0, 0.3, 1.7]:
            assert success_probability(a, 1.0) == 1.0

    def test_vacuum_invariant(self):
        for t in [0.1, 0.5, 1.0]:
            assert success_probability(0.0, t) == 1.0

    def test_direct_value(self):
        assert success_probability(0.75, 0.275) == pytest.approx(
            math.exp(-0.54375), abs=1e-15
        )

    @pytest.mark.parametrize("bad_t", [0.0, -0.5, 1.2, math.nan])
    def test_domain(self, bad_t):
        with pytest.raises(DomainError):
            success_probability(0.5, bad_t)

    @given(st.floats(min_value=1e-6, max_value=2.0, allow_nan=False))
    def test_monotone_in_transmittance(self, a):
        # strict growth is only float-resolvable for non-vanishing amplitude
        ts = np.linspace(0.05, 1.0, 30)
        ps = [success_probability(a, t) for t in ts]
        assert all(p1 < p2 for p1, p2 in zip(ps, ps[1:]))
        assert 0.0 < ps[0] <= 1.0


class TestApplyCatalysis:
    def test_identity(self):
        res = apply_catalysis(0.75, 1.0)
        ref = modulation_state(0.75)
        assert res.p_success == 1.0
        assert res.alpha_sq_out == 0.75
        assert res.state_out.x_var == ref.x_var
        assert res.state_out.z4 == ref.z4
        assert np.array_equal(res.state_out.lambdas, ref.lambdas)

    def test_rescaling(self):
        res = apply_catalysis(0.75, 0.275)
        assert res.alpha_sq_out == pytest.approx(0.206250, abs=1e-15)
        assert res.state_out.x_var == pytest.approx(1.41250, abs=1e-15)
        assert res.state_out.z4 == pytest.approx(Z4_020625, abs=1e-9)

    def test_half_transmittance(self):
        res = apply_catalysis(0.2, 0.5)
        assert res.alpha_sq_out == pytest.approx(0.1, abs=1e-15)
        assert res.p_success == pytest.approx(math.exp(-0.1), abs=1e-15)

    def test_bound_flag(self):
        assert apply_catalysis(0.2, 0.5).within_bound  # vm_out = 0.2
        assert not apply_catalysis(0.75, 1.0).within_bound  # vm_out = 1.5
        assert apply_catalysis(0.75, 0.275).within_bound  # vm_out = 0.4125

    @given(alpha_sqs, transmittances, transmittances)
    def test_composition(self, a, t1, t2):
        """Two catalyses compose like one at the product transmittance."""
        first = apply_catalysis(a, t1)
        second = apply_catalysis(first.alpha_sq_out, t2)
        combined = apply_catalysis(a, t1 * t2)
        assert second.state_out.x_var == pytest.approx(combined.state_out.x_var, abs=1e-12)
        assert second.state_out.z4 == pytest.approx(combined.state_out.z4, abs=1e-12)
        assert first.p_success * second.p_success == pytest.approx(
            combined.p_success, abs=1e-12
        )
        assert first.p_success * second.p_success == pytest.approx(
            success_probability(a, t1 * t2), abs=1e-12
        )
