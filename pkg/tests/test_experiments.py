import math

import numpy as np
import pytest

from geneodenoise import experiments as exp
from geneodenoise.bounds import BoundInputs, expected_bound
from geneodenoise.noise import NoiseSampleConfig
from geneodenoise.signal import measure_lipschitz, sup_dist


class TestDemoFunctions:
    def test_sine_reference_point(self):
        demo = exp.demo_functions("sine")
        assert demo.signal.eval(math.pi / 2) == pytest.approx(1.0, abs=1e-6)
        assert demo.L == 1.0

    def test_quintic_lipschitz_constant(self):
        demo = exp.demo_functions("quintic")
        assert measure_lipschitz(demo.signal) <= 27.0 / 25.0 + 1e-2

    def test_quintic_root(self):
        demo = exp.demo_functions("quintic")
        assert demo.signal.eval(3.0) == pytest.approx(0.0, abs=1e-6)

    def test_unknown_name_rejected(self):
        with pytest.raises(ValueError):
            exp.demo_functions("cubic")


class TestGenLipschitz:
    def test_no_knots_gives_zero_signal(self):
        s = exp.gen_lipschitz(np.random.default_rng(0), L=1.0, N=0, ell=20.0)
        assert np.all(s.values == 0.0)

    def test_lipschitz_constant_respected(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            L = rng.uniform(0.5, 10)
            s = exp.gen_lipschitz(rng, L, int(rng.integers(1, 11)), 20.0)
            assert measure_lipschitz(s) <= L + 1e-9

    def test_endpoints_pinned(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            s = exp.gen_lipschitz(rng, 2.0, 5, 20.0)
            assert s.values[0] == 0.0
            assert s.values[-1] == 0.0


class TestRunTrial:
    def test_zero_noise_trial(self):
        cfg = exp.TrialConfig(
            demo="sine",
            noise=NoiseSampleConfig(k_range=(0, 0)),
            beta_for_radii=11.0,
        )
        rec = exp.run_trial(0, cfg)
        step = 4 * math.pi / 4000
        assert rec.raw_error == 0.0
        assert rec.k == 0
        # shifts alone can move a clean signal, but never past the envelope
        assert rec.denoised_error <= rec.det_bound + rec.L * step

    def test_in_family_trials_respect_bound(self):
        cfg = exp.TrialConfig(demo="sine",
                              noise=exp.demo_noise_preset(4 * math.pi))
        step = 4 * math.pi / 4000
        for rec in exp.run_trials(cfg, 25, seed=11):
            assert rec.in_family
            assert rec.denoised_error <= rec.det_bound + rec.L * step
            assert rec.pd_distance <= rec.det_bound + rec.L * step
            assert rec.pd_distance <= rec.denoised_error + 1e-9

    def test_deterministic_per_seed(self):
        cfg = exp.TrialConfig(demo="quintic",
                              noise=exp.demo_noise_preset(5.0))
        assert exp.run_trial(123, cfg) == exp.run_trial(123, cfg)


class TestRunHistogram:
    def test_overestimation_nonnegative_in_family(self):
        cfg = exp.TrialConfig(demo="sine",
                              noise=exp.demo_noise_preset(4 * math.pi),
                              compute_diagrams=False)
        hist, records = exp.run_histogram(cfg, 60, seed=5)
        step = 4 * math.pi / 4000
        assert np.all(hist.overestimations >= -step)
        assert hist.counts.sum() == 60

    def test_zero_trials_empty_histogram(self):
        cfg = exp.TrialConfig(demo="sine",
                              noise=exp.demo_noise_preset(4 * math.pi),
                              compute_diagrams=False)
        hist, records = exp.run_histogram(cfg, 0, seed=5)
        assert records == []
        assert hist.counts.sum() == 0

    def test_csv_output(self, tmp_path):
        cfg = exp.TrialConfig(demo="sine",
                              noise=exp.demo_noise_preset(4 * math.pi),
                              compute_diagrams=False)
        hist, records = exp.run_histogram(cfg, 10, seed=5)
        hist.to_csv(tmp_path / "h.csv")
        exp.trials_to_csv(records, tmp_path / "t.csv")
        lines = (tmp_path / "t.csv").read_text().splitlines()
        assert lines[0].split(",") == exp.TRIAL_CSV_HEADER
        assert len(lines) == 11


SMALL_SWEEP = exp.SweepConfig(alpha_set=(50, 60), beta_set=(5, 11), L_set=(1, 3),
                              trials_per_cell=10, seed=21)


class TestRunSweep:
    def test_denoising_beats_raw_in_every_marginal(self):
        _, marginals = exp.run_sweep(SMALL_SWEEP)
        for var, val, mean_raw, mean_den, mean_bound in marginals:
            assert mean_den < mean_raw
            assert mean_den <= mean_bound

    def test_byte_identical_reruns(self, tmp_path):
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        for p in (p1, p2):
            _, marginals = exp.run_sweep(SMALL_SWEEP)
            exp.marginals_to_csv(marginals, p)
        assert p1.read_bytes() == p2.read_bytes()

    def test_parallel_matches_sequential(self, tmp_path):
        import dataclasses

        _, m1 = exp.run_sweep(SMALL_SWEEP)
        _, m2 = exp.run_sweep(dataclasses.replace(SMALL_SWEEP, n_jobs=4))
        assert m1 == m2


class TestConvolutionBaseline:
    def test_geneo_beats_convolution_on_demo(self):
        from geneodenoise.noise import render_noise, sample_noise
        from geneodenoise.operators import denoise, grid_radii
        from geneodenoise.signal import add

        demo = exp.demo_functions("sine")
        rng = np.random.default_rng(31)
        spec = sample_noise(rng, exp.demo_noise_preset(demo.ell))
        phat = add(demo.signal, render_noise(spec, demo.signal))
        radii = grid_radii(spec.sigma, spec.beta, demo.signal.step)
        geneo_err = sup_dist(denoise(phat, radii), demo.signal)
        conv = exp.convolution_errors(phat, demo.signal, [3, 5, 20, 100])
        assert min(conv.values()) > geneo_err
