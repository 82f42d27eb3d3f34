import math

import pytest
from hypothesis import given, settings, strategies as st

from dsteleport.desitter import (
    BUNCH_DAVIES,
    DeSitterParams,
    alpha_for_cutoff,
    alpha_one_particle_state,
    alpha_vacuum_state,
    power_spectrum_modification,
    squeezing_from_params,
    truncation_tail_bound,
)
from dsteleport.errors import TruncationError
from dsteleport.fock import difference_norm

# Frozen with a 50-digit decimal evaluation of the defining expressions.
EXP_MINUS_2PI = 0.0018674427317079888
DELTA_KH1_ALPHA_M4 = 1.4227105080146945
ONE_MINUS_EXP_MINUS_PI = 0.9567860817362278


def params(k_over_h, alpha=BUNCH_DAVIES):
    return DeSitterParams(H=1.0 / k_over_h, k=1.0, alpha=alpha)


class TestSqueezingParams:
    def test_thermal_factor_at_unit_ratio(self):
        s = squeezing_from_params(params(1.0))
        assert s.tanh_r**2 == pytest.approx(EXP_MINUS_2PI, abs=1e-16)
        assert s.delta == 1.0
        assert s.q == pytest.approx(EXP_MINUS_2PI, abs=1e-16)

    def test_delta_with_cutoff_vacuum(self):
        s = squeezing_from_params(params(1.0, alpha=-4.0))
        assert s.delta == pytest.approx(DELTA_KH1_ALPHA_M4, abs=1e-13)

    def test_delta_is_one_only_without_cutoff(self):
        assert squeezing_from_params(params(0.7)).delta == 1.0
        assert squeezing_from_params(params(0.7, alpha=-30.0)).delta > 1.0

    def test_delta_increases_with_alpha(self):
        deltas = [
            squeezing_from_params(params(1.0, alpha=a)).delta
            for a in (-10.0, -5.0, -2.0, -0.5)
        ]
        assert deltas == sorted(deltas)
        assert deltas[0] > 1.0

    def test_deep_uv_limit(self):
        # tanh r vanishes; q -> 0 without a cutoff, and saturates at
        # exp(2 alpha) when a cutoff vacuum is kept at fixed alpha
        assert squeezing_from_params(params(50.0)).q < 1e-130
        s = squeezing_from_params(params(50.0, alpha=-3.0))
        assert s.tanh_r < 1e-60
        assert s.q == pytest.approx(math.exp(-6.0), rel=1e-8)

    def test_log_space_branch(self):
        # alpha + pi k/H far beyond exp overflow; q must still come out finite
        s = squeezing_from_params(params(300.0, alpha=-5.0))
        assert s.q == pytest.approx(math.exp(-10.0), rel=1e-10)
        assert 0.0 < s.q < 1.0

    @settings(deadline=None)
    @given(
        st.floats(1e-3, 100.0, allow_nan=False),
        st.floats(-40.0, -1e-3, allow_nan=False),
    )
    def test_q_below_one(self, k_over_h, alpha):
        s = squeezing_from_params(params(k_over_h, alpha=alpha))
        assert 0.0 <= s.q < 1.0
        assert s.delta >= 1.0

    def test_recoverable_hyperbolics(self):
        s = squeezing_from_params(params(0.8))
        assert s.cosh_r**2 - s.sinh_r**2 == pytest.approx(1.0, abs=1e-12)
        assert s.sinh_r / s.cosh_r == pytest.approx(s.tanh_r, abs=1e-14)


class TestParamValidation:
    def test_rejects_bad_rates(self):
        with pytest.raises(ValueError):
            DeSitterParams(H=0.0, k=1.0)
        with pytest.raises(ValueError):
            DeSitterParams(H=1.0, k=-2.0)

    def test_rejects_nonnegative_alpha(self):
        with pytest.raises(ValueError):
            DeSitterParams(H=1.0, k=1.0, alpha=0.0)
        with pytest.raises(ValueError):
            DeSitterParams(H=1.0, k=1.0, alpha=1.5)
        with pytest.raises(ValueError):
            DeSitterParams(H=1.0, k=1.0, alpha=float("nan"))

    def test_rejects_cutoff_below_rate(self):
        with pytest.raises(ValueError):
            DeSitterParams(H=2.0, k=1.0, Lambda=1.0)

    def test_cutoff_to_alpha_helper(self):
        assert alpha_for_cutoff(1e14, 1e16) == pytest.approx(math.log(1e-2))
        with pytest.raises(ValueError):
            alpha_for_cutoff(2.0, 1.0)


class TestVacuumState:
    def test_flat_space_limit_is_empty(self):
        state = alpha_vacuum_state(params(5000.0), n_max=4)
        assert set(state.amplitudes) == {(0, 0)}
        assert abs(state.amplitudes[(0, 0)]) == pytest.approx(1.0, abs=1e-12)

    def test_ground_weight_at_half_ratio(self):
        state = alpha_vacuum_state(params(0.5), n_max=40)
        assert abs(state.amplitudes[(0, 0)]) ** 2 == pytest.approx(
            ONE_MINUS_EXP_MINUS_PI, abs=1e-12
        )

    def test_pairwise_occupation(self):
        state = alpha_vacuum_state(params(0.4, alpha=-2.0), n_max=30)
        assert all(occ[0] == occ[1] for occ in state.amplitudes)

    def test_schmidt_coefficients_geometric(self):
        p = params(0.6, alpha=-3.0)
        s = squeezing_from_params(p)
        state = alpha_vacuum_state(p, n_max=30)
        checked = 0
        for n in range(30):
            if (n + 1, n + 1) not in state.amplitudes:
                break
            ratio = state.amplitudes[(n + 1, n + 1)] / state.amplitudes[(n, n)]
            assert ratio.real == pytest.approx(s.tanh_r_delta, abs=1e-12)
            checked += 1
        assert checked >= 10

    def test_raw_norm_deficit_below_tail(self):
        for k_over_h, alpha in ((0.3, -1.0), (0.5, BUNCH_DAVIES), (1.0, -4.0)):
            p = params(k_over_h, alpha)
            tol = 1e-10
            n_max = truncation_tail_bound(p, tol)
            raw = alpha_vacuum_state(p, n_max, normalize=False)
            assert abs(raw.norm_squared() - 1.0) < tol
            assert abs(alpha_vacuum_state(p, n_max).norm() - 1.0) < 1e-12

    def test_raw_norm_matches_geometric_sum(self):
        # oracle: the truncated norm is the closed geometric sum 1 - q^(N+1)
        p = params(0.35, alpha=-1.5)
        q = squeezing_from_params(p).q
        n_max = 20
        raw = alpha_vacuum_state(p, n_max, normalize=False)
        assert raw.norm_squared() == pytest.approx(1.0 - q ** (n_max + 1), abs=1e-14)

    def test_cutoff_guard(self):
        with pytest.raises(TruncationError):
            alpha_vacuum_state(params(0.3, alpha=-1.0), n_max=3, tol=1e-12)


class TestOneParticleState:
    def test_flat_space_limit_is_single_photon(self):
        state = alpha_one_particle_state(params(5000.0), n_max=4)
        assert set(state.amplitudes) == {(1, 0)}

    def test_raw_norm_matches_series_oracle(self):
        # oracle: direct summation of (1-q)^2 (n+1) q^n over the kept indices
        p = params(0.4, alpha=-2.0)
        q = squeezing_from_params(p).q
        n_max = 35
        raw = alpha_one_particle_state(p, n_max, normalize=False)
        series = sum((1 - q) ** 2 * (n + 1) * q**n for n in range(n_max))
        assert raw.norm_squared() == pytest.approx(series, abs=1e-14)
        tol = 1e-10
        n_req = truncation_tail_bound(p, tol)
        raw_req = alpha_one_particle_state(p, n_req, normalize=False)
        assert abs(raw_req.norm_squared() - 1.0) < tol

    def test_orthogonal_to_vacuum(self):
        p = params(0.7, alpha=-1.5)
        vac = alpha_vacuum_state(p, n_max=25)
        one = alpha_one_particle_state(p, n_max=25)
        assert abs(vac.overlap(one)) == 0.0


class TestBunchDaviesRecovery:
    def test_alpha_minus_twenty_close_to_limit(self):
        for k_over_h in (0.5, 1.0, 2.0, 5.0):
            p_bd = params(k_over_h)
            p_20 = params(k_over_h, alpha=-20.0)
            n_max = truncation_tail_bound(p_bd, 1e-12)
            d = difference_norm(
                alpha_vacuum_state(p_bd, n_max), alpha_vacuum_state(p_20, n_max)
            )
            assert d < 1e-6


class TestTailBound:
    def test_vacuum_only_needs_one(self):
        assert truncation_tail_bound(params(5000.0), tol=1e-12) == 1

    def test_matches_brute_force_minimum(self):
        # oracle: directly summed tails, mirroring the kept-index semantics
        # (vacuum keeps indices <= n, the one-particle family <= n - 1)
        def brute_ok(q, n, tol):
            families = (
                lambda m: (1 - q) * q**m,
                lambda m: (1 - q) ** 2 * (m + 1) * q**m,
                lambda m: (1 - q) ** 3 * (m + 1) ** 2 * q**m,
            )
            for fam in families:
                total, m = 0.0, n
                while True:
                    add = fam(m)
                    total += add
                    if add < 1e-30 or total >= tol:
                        break
                    m += 1
                if total >= tol:
                    return False
            return True

        for q in (0.25, 0.5):
            k_over_h = -math.log(q) / (2 * math.pi)
            p = params(k_over_h)
            for tol in (1e-8, 1e-12):
                n_max = truncation_tail_bound(p, tol)
                assert brute_ok(q, n_max, tol)
                assert not brute_ok(q, n_max - 1, tol)

    def test_monotone_in_q(self):
        tol = 1e-10
        bounds = [
            truncation_tail_bound(params(k_over_h), tol)
            for k_over_h in (2.0, 1.0, 0.5, 0.3, 0.2)
        ]
        assert bounds == sorted(bounds)

    def test_tolerance_validation(self):
        with pytest.raises(ValueError):
            truncation_tail_bound(params(1.0), tol=0.0)
        with pytest.raises(ValueError):
            truncation_tail_bound(params(1.0), tol=1.0)


class TestPowerSpectrum:
    def test_zeros_at_sine_nodes(self):
        for m in (1, 2, 7):
            h_rate = 2.0 / (m * math.pi)
            assert power_spectrum_modification(h_rate, 1.0) == pytest.approx(0.0, abs=1e-15)

    def test_inflation_scale_value(self):
        # 2 Lambda / H = 200 at the quoted scales; sin(200) frozen below
        value = power_spectrum_modification(1e14, 1e16)
        assert value == pytest.approx(0.01 * -0.8732972972139946, abs=1e-17)

    @settings(deadline=None)
    @given(st.floats(0.01, 10.0), st.floats(1.1, 50.0))
    def test_bounded_by_ratio(self, h_rate, factor):
        scale = h_rate * factor
        assert abs(power_spectrum_modification(h_rate, scale)) <= h_rate / scale + 1e-18

    def test_rejects_scale_below_rate(self):
        with pytest.raises(ValueError):
            power_spectrum_modification(2.0, 1.0)
