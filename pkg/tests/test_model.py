"""Spec construction, validation, and trajectory indexing."""

import numpy as np
import pytest

from ratsys import (
    InitialConditions,
    SystemSpec,
    Trajectory,
    from_scalar_params,
    validate,
    validate_initial,
)


class TestFromScalarParams:
    def test_direct_construction(self):
        spec = from_scalar_params(2, 1.0, 0.0, 0.0, 0.0, [0.0], [0.0], [0.0], [0.0])
        assert spec.k == 2 and spec.m == 2
        np.testing.assert_array_equal(spec.A, [[1.0, 0.0], [0.0, 0.0]])
        assert spec.denom.shape == (2, 1, 2)
        assert not spec.denom.any()

    def test_k3_off_diagonal(self):
        spec = from_scalar_params(
            3, 0.0, 1.0, 1.0, 0.0, [1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]
        )
        np.testing.assert_array_equal(spec.A, [[0.0, 1.0], [1.0, 0.0]])
        np.testing.assert_array_equal(spec.denom[0, 0], [1.0, 0.0])
        np.testing.assert_array_equal(spec.denom[0, 1], [0.0, 0.0])

    def test_round_trip(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            k = int(rng.integers(2, 6))
            scalars = rng.uniform(0.0, 3.0, 4)
            lists = rng.uniform(0.0, 2.0, (4, k - 1))
            spec = from_scalar_params(k, *scalars, *lists)
            np.testing.assert_array_equal(
                spec.A, [[scalars[0], scalars[1]], [scalars[2], scalars[3]]]
            )
            np.testing.assert_array_equal(spec.denom[0, :, 0], lists[0])  # B
            np.testing.assert_array_equal(spec.denom[0, :, 1], lists[1])  # C
            np.testing.assert_array_equal(spec.denom[1, :, 0], lists[2])  # D
            np.testing.assert_array_equal(spec.denom[1, :, 1], lists[3])  # E
            assert validate(spec) == []

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(beta=-1.0),
            dict(gamma=-0.5),
            dict(delta=float("nan")),
            dict(epsilon=-2.0),
        ],
    )
    def test_rejects_bad_scalar(self, kwargs):
        base = dict(beta=1.0, gamma=0.0, delta=0.0, epsilon=1.0)
        base.update(kwargs)
        with pytest.raises(ValueError):
            from_scalar_params(2, base["beta"], base["gamma"], base["delta"],
                               base["epsilon"], [0.0], [0.0], [0.0], [0.0])

    def test_rejects_negative_coefficient(self):
        with pytest.raises(ValueError, match="B"):
            from_scalar_params(2, 1.0, 0.0, 0.0, 1.0, [-0.1], [0.0], [0.0], [0.0])

    def test_rejects_k1(self):
        with pytest.raises(ValueError, match="k"):
            from_scalar_params(1, 1.0, 0.0, 0.0, 1.0, [], [], [], [])

    def test_rejects_wrong_length(self):
        with pytest.raises(ValueError, match="length"):
            from_scalar_params(3, 1.0, 0.0, 0.0, 1.0, [0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0])


class TestValidate:
    def test_well_formed(self):
        spec = SystemSpec(k=2, A=np.eye(2))
        assert validate(spec) == []

    def test_k_too_small(self):
        problems = validate(SystemSpec(k=1, A=np.eye(2)))
        assert any("k" in p for p in problems)

    def test_negative_kernel_entry(self):
        problems = validate(SystemSpec(k=2, A=[[0.5, -0.1], [0.0, 0.5]]))
        assert any("nonnegative" in p for p in problems)

    def test_bad_denom_shape(self):
        problems = validate(SystemSpec(k=3, A=np.eye(2), denom=np.zeros((2, 1, 2))))
        assert any("denom" in p for p in problems)

    def test_negative_denom(self):
        problems = validate(SystemSpec(k=2, A=np.eye(2), denom=-np.ones((2, 1, 2))))
        assert any("denom" in p for p in problems)


class TestInitialConditions:
    def test_impulse_layout(self):
        init = InitialConditions.impulse(3, [1.0, 2.0])
        assert init.history.shape == (3, 2)
        np.testing.assert_array_equal(init.history[0], [1.0, 2.0])
        assert not init.history[1:].any()

    def test_validation(self):
        spec = SystemSpec(k=2, A=np.eye(2))
        ok = InitialConditions(np.ones((2, 2)))
        assert validate_initial(ok, spec) == []
        bad_shape = InitialConditions(np.ones((3, 2)))
        assert validate_initial(bad_shape, spec)
        negative = InitialConditions(-np.ones((2, 2)))
        assert any("nonnegative" in p for p in validate_initial(negative, spec))


class TestTrajectory:
    def test_indexing(self):
        spec = SystemSpec(k=2, A=np.eye(2))
        values = np.arange(10.0).reshape(5, 2)
        traj = Trajectory(spec=spec, values=values, horizon=3)
        assert traj.n_first == -1
        np.testing.assert_array_equal(traj.value(-1), values[0])
        np.testing.assert_array_equal(traj.value(0), values[1])
        np.testing.assert_array_equal(traj.value(3), values[4])
        assert traj.generated.shape == (3, 2)
        with pytest.raises(IndexError):
            traj.value(4)
        with pytest.raises(IndexError):
            traj.value(-2)
