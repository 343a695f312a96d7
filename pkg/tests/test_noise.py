import math

import numpy as np
import pytest

from geneodenoise.noise import (
    InfeasibleNoiseConfig,
    NoiseSampleConfig,
    NoiseSpec,
    check_family,
    load_json,
    mother_bump,
    render_noise,
    sample_noise,
    split_centers,
    validate_mother,
)
from geneodenoise.operators import max_shift, min_shift
from geneodenoise.signal import Signal


GRID = Signal(-20.0, 0.01, np.zeros(4001))


class TestMotherBump:
    def test_peak_is_one(self):
        assert mother_bump(0.0) == 1.0

    def test_zero_outside_support(self):
        assert mother_bump(1.5) == 0.0
        assert mother_bump(-1.5) == 0.0
        assert mother_bump(1.0) == 0.0

    def test_half_point(self):
        assert mother_bump(0.5) == pytest.approx(math.exp(-1.0 / 3.0))

    def test_bounded_in_unit_interval(self):
        x = np.linspace(-2, 2, 10001)
        y = mother_bump(x)
        assert np.all(y >= 0.0)
        assert np.all(y <= 1.0)

    def test_validate_accepts_default(self):
        validate_mother(mother_bump, sigma=1.1)

    def test_validate_rejects_wide_bump(self):
        with pytest.raises(ValueError):
            validate_mother(lambda x: np.exp(-np.asarray(x) ** 2), sigma=1.1)


class TestNoiseSpec:
    def test_derived_quantities(self):
        spec = NoiseSpec(bumps=((5.0, 11.0, 0.0), (-7.0, 13.0, 9.0), (2.0, 20.0, 18.0)))
        assert spec.k == 3
        assert spec.beta == 11.0
        assert spec.eta == 9.0
        assert spec.alpha_bar == 7.0

    def test_single_bump_eta_infinite(self):
        spec = NoiseSpec(bumps=((1.0, 2.0, 0.0),))
        assert math.isinf(spec.eta)

    def test_zero_amplitude_bumps_dropped(self):
        spec = NoiseSpec(bumps=((0.0, 2.0, 0.0), (1.0, 2.0, 5.0)))
        assert spec.k == 1

    def test_nonpositive_squeeze_rejected(self):
        with pytest.raises(ValueError):
            NoiseSpec(bumps=((1.0, 0.0, 0.0),))

    def test_json_roundtrip(self, tmp_path):
        spec = NoiseSpec(bumps=((5.0, 11.0, 0.5), (-2.0, 12.0, 9.0)), sigma=1.1)
        path = tmp_path / "spec.json"
        spec.to_json(path)
        assert load_json(path) == spec


class TestRenderNoise:
    def test_empty_is_zero(self):
        out = render_noise(NoiseSpec(bumps=()), GRID)
        assert np.all(out.values == 0.0)

    def test_single_bump_peak(self):
        spec = NoiseSpec(bumps=((5.0, 1.0, 0.0),))
        out = render_noise(spec, GRID)
        assert out.eval(0.0) == 5.0

    def test_disjoint_bumps_supnorm(self):
        spec = NoiseSpec(bumps=((4.0, 1.0, -10.0), (-9.0, 1.0, 10.0)))
        out = render_noise(spec, GRID)
        assert np.max(np.abs(out.values)) == pytest.approx(9.0)

    def test_bounded_by_k_alpha_bar(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            spec = sample_noise(rng, NoiseSampleConfig(c_range=(-15, 15)))
            out = render_noise(spec, GRID)
            assert np.max(np.abs(out.values)) <= spec.k * spec.alpha_bar + 1e-12

    def test_vanishes_outside_support_set(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            spec = sample_noise(rng, NoiseSampleConfig(c_range=(-15, 15)))
            out = render_noise(spec, GRID)
            x = GRID.grid
            outside = np.ones_like(x, dtype=bool)
            for lo, hi in spec.support_set():
                outside &= (x <= lo) | (x >= hi)
            assert np.all(out.values[outside] == 0.0)


class TestCheckFamily:
    def test_single_bump_always_separated(self):
        spec = NoiseSpec(bumps=((1.0, 5.0, 0.0),))
        assert check_family(spec, eta=100.0, beta=5.0)

    def test_close_centers_fail(self):
        spec = NoiseSpec(bumps=((1.0, 5.0, 0.0), (1.0, 5.0, 0.5)))
        assert not check_family(spec, eta=1.0, beta=5.0)

    def test_example_passes(self):
        spec = NoiseSpec(bumps=((1.0, 11.0, 0.0), (1.0, 11.0, 9.0), (1.0, 11.0, 18.0)))
        assert check_family(spec, eta=8.8, beta=11.0)

    def test_thin_factor_fail(self):
        spec = NoiseSpec(bumps=((1.0, 5.0, 0.0),))
        assert not check_family(spec, eta=1.0, beta=6.0)


class TestSampleNoise:
    def test_deterministic_under_seed(self):
        cfg = NoiseSampleConfig(c_range=(-10, 10))
        s1 = sample_noise(np.random.default_rng(42), cfg)
        s2 = sample_noise(np.random.default_rng(42), cfg)
        assert s1 == s2

    def test_rejection_postcondition(self):
        cfg = NoiseSampleConfig(k_range=(2, 4), b_range=(5.0, 20.0),
                                c_range=(-10, 10), reject_below_eta=1.5)
        rng = np.random.default_rng(3)
        for _ in range(30):
            spec = sample_noise(rng, cfg)
            assert spec.eta > 1.5

    def test_family_gate_postcondition(self):
        cfg = NoiseSampleConfig(k_range=(2, 4), c_range=(-10, 10), family_gate=True)
        rng = np.random.default_rng(4)
        for _ in range(30):
            spec = sample_noise(rng, cfg)
            assert check_family(spec, 8.0 * cfg.sigma / spec.beta, spec.beta)

    def test_infeasible_raises(self):
        cfg = NoiseSampleConfig(k_range=(5, 5), c_range=(0.0, 1.0),
                                b_range=(10.0, 20.0), reject_below_eta=5.0,
                                max_attempts=200)
        with pytest.raises(InfeasibleNoiseConfig):
            sample_noise(np.random.default_rng(5), cfg)

    def test_min_gap_matches_closed_form(self):
        # empirical P(gap > 1) for k = 5 centers on [0, 20] vs the spacing law
        k, ell, eta = 5, 20.0, 1.0
        rng = np.random.default_rng(6)
        draws = rng.uniform(0, ell, size=(10**4, k))
        draws.sort(axis=1)
        gaps = np.diff(draws, axis=1).min(axis=1)
        emp = np.mean(gaps > eta)
        p = (1 - (k - 1) * eta / ell) ** k
        se = math.sqrt(p * (1 - p) / 10**4)
        assert abs(emp - p) <= 3 * se


class TestShiftSplitting:
    def _family_spec(self):
        # gaps 9, squeeze 11: in the (eta = 8.8, beta = 11) family
        return NoiseSpec(bumps=((6.0, 11.0, -9.0), (-4.0, 11.0, 0.0), (3.0, 12.0, 9.0)))

    def test_min_shift_keeps_negative_bumps(self):
        spec = self._family_spec()
        sb = spec.sigma / spec.beta
        rho = 2.0 * sb  # lambda = sb satisfies lambda <= rho <= eta/2 - lambda
        shifted = min_shift(render_noise(spec, GRID), rho)
        formula = render_noise(split_centers(spec, rho, sign=-1), GRID)
        assert np.all(shifted.values <= 1e-12)
        assert np.max(np.abs(shifted.values - formula.values)) <= 2e-2  # grid tol

    def test_max_shift_keeps_positive_bumps(self):
        spec = self._family_spec()
        rho = 2.0 * spec.sigma / spec.beta
        shifted = max_shift(render_noise(spec, GRID), rho)
        formula = render_noise(split_centers(spec, rho, sign=+1), GRID)
        assert np.all(shifted.values >= -1e-12)
        assert np.max(np.abs(shifted.values - formula.values)) <= 2e-2

    def test_closure_center_gaps(self):
        # structural check: shifted bump centers stay >= 2*lambda apart
        spec = self._family_spec()
        sb = spec.sigma / spec.beta
        lam = sb
        rho = 2.0 * sb
        for sign in (-1, +1):
            out = split_centers(spec, rho, sign)
            if out.k >= 2:
                assert out.eta >= 2 * lam - 1e-12
            assert out.beta >= spec.beta
