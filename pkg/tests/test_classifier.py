"""Regime prediction, tolerance policy, and the predict/observe loop."""

import numpy as np
import pytest

from conftest import symmetric_positive_with_rho

from ratsys import (
    BoundaryAmbiguous,
    CONVERGES_TO_ZERO,
    PERIOD_2K,
    PERIOD_K,
    UNBOUNDED_EXISTS,
    SystemSpec,
    classify_tetrachotomy,
    classify_trichotomy,
    regime_from_spectrum,
    simulate,
    verify_classification,
)

HALF = np.array([[0.5, 0.5], [0.5, 0.5]])


class TestTetrachotomy:
    def test_contracting(self):
        cls = classify_tetrachotomy(SystemSpec(k=2, A=[[0.3, 0.2], [0.2, 0.3]]))
        assert cls.regime == CONVERGES_TO_ZERO
        assert cls.theorem_path == "T4-I"
        assert cls.witness is None

    def test_permutation_is_period_2k(self):
        cls = classify_tetrachotomy(SystemSpec(k=2, A=[[0.0, 1.0], [1.0, 0.0]]))
        assert cls.regime == PERIOD_2K
        assert cls.theorem_path == "T4-III"
        np.testing.assert_array_equal(cls.witness.history[0], [1.0, 0.0])

    def test_rank_one_unit_is_period_k(self):
        cls = classify_tetrachotomy(SystemSpec(k=2, A=HALF))
        assert cls.regime == PERIOD_K
        assert cls.theorem_path == "T4-II"
        assert cls.witness is not None

    def test_all_ones_unbounded(self):
        cls = classify_tetrachotomy(SystemSpec(k=2, A=np.full((2, 2), 1.0)))
        assert cls.regime == UNBOUNDED_EXISTS
        assert cls.theorem_path == "T4-IV"
        assert cls.witness is not None

    def test_nonsymmetric_case3_form(self):
        cls = classify_tetrachotomy(SystemSpec(k=2, A=[[0.0, 2.0], [0.5, 0.0]]))
        assert cls.regime == PERIOD_2K
        np.testing.assert_allclose(cls.spectrum.eigenvalues, [1.0, -1.0])

    def test_rejects_general_nonsymmetric(self):
        with pytest.raises(ValueError, match="symmetric"):
            classify_tetrachotomy(SystemSpec(k=2, A=[[0.5, 1.0], [0.2, 0.1]]))

    def test_rejects_wrong_dimension(self):
        with pytest.raises(ValueError, match="m = 2"):
            classify_tetrachotomy(SystemSpec(k=2, A=np.eye(3)))

    def test_boundary_band_transitions(self):
        # rho(c * HALF) = c; the period-k band is exactly |c - 1| <= RHO_TOL
        for c, regime in [
            (1.0 - 3e-9, CONVERGES_TO_ZERO),
            (1.0 - 5e-10, PERIOD_K),
            (1.0, PERIOD_K),
            (1.0 + 5e-10, PERIOD_K),
            (1.0 + 3e-9, UNBOUNDED_EXISTS),
        ]:
            cls = classify_tetrachotomy(SystemSpec(k=2, A=c * HALF))
            assert cls.regime == regime, (c, cls.regime)

    def test_minus_one_detection_uses_band(self):
        assert regime_from_spectrum(np.array([1.0, -1.0 + 1e-10]), 0.0) == PERIOD_2K
        assert regime_from_spectrum(np.array([1.0, -0.5]), 0.0) == PERIOD_K

    def test_boundary_ambiguous_on_bad_residual(self):
        with pytest.raises(BoundaryAmbiguous):
            regime_from_spectrum(np.array([1.0, 0.0]), residual=1e-6)


class TestTrichotomy:
    def test_all_ones_third_is_period_k(self):
        cls = classify_trichotomy(SystemSpec(k=3, A=np.full((3, 3), 1.0 / 3.0)))
        assert cls.regime == PERIOD_K
        assert cls.theorem_path == "T3-ii"
        r, w = cls.spectrum.perron
        assert abs(r - 1.0) <= 1e-9
        np.testing.assert_allclose(w, np.full(3, 3.0 ** -0.5), atol=1e-10)

    def test_shifted_kernel_unbounded(self):
        cls = classify_trichotomy(SystemSpec(k=2, A=[[2.0, 1.0], [1.0, 2.0]]))
        assert cls.regime == UNBOUNDED_EXISTS
        assert cls.theorem_path == "T3-iii"

    def test_contracting(self):
        cls = classify_trichotomy(SystemSpec(k=2, A=[[0.3, 0.2], [0.2, 0.3]]))
        assert cls.regime == CONVERGES_TO_ZERO
        assert cls.theorem_path == "T3-i"

    def test_rejects_zero_entry(self):
        with pytest.raises(ValueError, match="positive"):
            classify_trichotomy(SystemSpec(k=2, A=[[1.0, 0.0], [0.0, 1.0]]))

    def test_agrees_with_tetrachotomy_on_positive_2x2(self):
        rng = np.random.default_rng(43)
        for _ in range(20):
            rho = float(rng.uniform(0.3, 2.0))
            if abs(rho - 1.0) < 1e-3:
                rho = 1.0
            a = symmetric_positive_with_rho(rng, 2, rho)
            spec = SystemSpec(k=2, A=a)
            assert classify_trichotomy(spec).regime == classify_tetrachotomy(spec).regime


class TestWitnessValidity:
    @pytest.mark.parametrize(
        "a",
        [HALF, np.array([[0.0, 1.0], [1.0, 0.0]]), np.full((2, 2), 1.0)],
    )
    def test_witness_satisfies_constructor_postconditions(self, a):
        spec = SystemSpec(k=2, A=a, denom=np.full((2, 1, 2), 0.25))
        cls = classify_tetrachotomy(spec)
        seed = cls.witness
        assert seed.history[0].any()
        assert not seed.history[1:].any()
        traj = simulate(spec, seed, 400)
        gen = traj.generated
        if cls.regime == PERIOD_K:
            assert np.abs(gen[2:] - gen[:-2]).max() <= 1e-12
        elif cls.regime == PERIOD_2K:
            assert np.abs(gen[4:] - gen[:-4]).max() <= 1e-12
            assert np.abs(gen[2:] - gen[:-2]).max() > 0.1
        else:
            assert traj.diverged_at is not None or (gen > 1e6).any()


class TestVerifyClassification:
    def test_contracting_all_pass(self):
        spec = SystemSpec(k=2, A=[[0.3, 0.2], [0.2, 0.3]], denom=np.full((2, 1, 2), 0.5))
        cls = classify_tetrachotomy(spec)
        report = verify_classification(spec, cls, horizon=300, trials=20, rng_seed=1)
        assert report.passed
        assert len(report.checks) == 20

    def test_case3_witness_prime_period(self):
        spec = SystemSpec(k=2, A=[[0.0, 1.0], [1.0, 0.0]], denom=np.full((2, 1, 2), 0.25))
        cls = classify_tetrachotomy(spec)
        report = verify_classification(spec, cls, horizon=2000, trials=5, rng_seed=2)
        assert report.passed
        assert report.checks[0].name.startswith("witness")
        assert "period 4" in report.checks[0].observed

    def test_unbounded_witness_gated_random_informational(self):
        spec = SystemSpec(k=2, A=np.full((2, 2), 1.0), denom=np.full((2, 1, 2), 0.5))
        cls = classify_tetrachotomy(spec)
        report = verify_classification(spec, cls, horizon=300, trials=5, rng_seed=3)
        assert report.passed
        gated = [c for c in report.checks if c.gated]
        assert len(gated) == 1 and gated[0].name.startswith("witness")

    def test_wrong_expectation_produces_counterexamples(self):
        # a period-k system checked against a converges-to-zero prediction
        spec = SystemSpec(k=2, A=HALF, denom=np.full((2, 1, 2), 0.25))
        cls = classify_tetrachotomy(spec)
        from dataclasses import replace

        wrong = replace(cls, regime=CONVERGES_TO_ZERO, witness=None)
        report = verify_classification(spec, wrong, horizon=2000, trials=5, rng_seed=4)
        assert not report.passed
        failures = report.failures()
        assert failures and failures[0].init is not None

    def test_trichotomy_period_k_verified(self):
        rng = np.random.default_rng(47)
        a = symmetric_positive_with_rho(rng, 3, 1.0)
        spec = SystemSpec(k=3, A=a, denom=rng.uniform(0.5, 1.5, (3, 2, 3)))
        cls = classify_trichotomy(spec)
        report = verify_classification(spec, cls, horizon=6000, trials=8, rng_seed=5)
        assert report.passed, [c for c in report.checks if not c.passed]
