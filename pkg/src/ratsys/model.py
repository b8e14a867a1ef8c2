"""Domain types for k-th order rational difference systems in vector form.

The system iterates ``v_n = B_n A v_{n-k}`` on the nonnegative orthant,
where ``A`` is an m x m nonnegative kernel and ``B_n`` is the diagonal of
reciprocals ``1 / (1 + sum_j q_ij . v_{n-j})`` built from per-equation
delay coefficient vectors ``q_ij`` (delays j = 1..k-1).  The additive
constant in every denominator is fixed at 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .linalg import is_nonnegative


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class SystemSpec:
    """Full parameterization of one rational system.

    ``k`` is the delay order (>= 2), ``A`` the m x m nonnegative kernel,
    and ``denom[i, j-1]`` the nonnegative m-vector of denominator
    coefficients for equation ``i + 1`` at delay ``j`` (``j = 1..k-1``).
    ``denom=None`` means all denominators are 1, i.e. the linear system.
    """

    k: int
    A: np.ndarray
    denom: Optional[np.ndarray] = None

    def __post_init__(self):
        a = np.asarray(self.A, dtype=float)
        object.__setattr__(self, "A", _readonly(a))
        m = a.shape[0] if a.ndim == 2 else 0
        lags = max(int(self.k) - 1, 0)
        if self.denom is None:
            q = np.zeros((m, lags, m))
        else:
            q = np.asarray(self.denom, dtype=float)
        object.__setattr__(self, "denom", _readonly(q))

    @property
    def m(self) -> int:
        return self.A.shape[0]


def from_scalar_params(k, beta, gamma, delta, epsilon, B, C, D, E) -> SystemSpec:
    """Build the m = 2 spec from the scalar two-equation parameters.

    ``A = [[beta, gamma], [delta, epsilon]]``; delay j of the first
    equation's denominator uses the vector ``(B[j-1], C[j-1])`` and the
    second equation's uses ``(D[j-1], E[j-1])``.  All parameters must be
    nonnegative and the coefficient lists must have length ``k - 1``.
    """
    if int(k) != k or k < 2:
        raise ValueError("k must be an integer >= 2")
    k = int(k)
    for name, value in (("beta", beta), ("gamma", gamma), ("delta", delta), ("epsilon", epsilon)):
        if not np.isfinite(value) or value < 0:
            raise ValueError(f"{name} must be finite and nonnegative")
    coeffs = {}
    for name, seq in (("B", B), ("C", C), ("D", D), ("E", E)):
        arr = np.asarray(seq, dtype=float)
        if arr.shape != (k - 1,):
            raise ValueError(f"{name} must have length k - 1 = {k - 1}")
        if not np.isfinite(arr).all() or (arr < 0).any():
            raise ValueError(f"{name} entries must be finite and nonnegative")
        coeffs[name] = arr
    a = np.array([[beta, gamma], [delta, epsilon]], dtype=float)
    denom = np.stack(
        [
            np.column_stack([coeffs["B"], coeffs["C"]]),
            np.column_stack([coeffs["D"], coeffs["E"]]),
        ]
    )
    return SystemSpec(k=k, A=a, denom=denom)


def validate(spec: SystemSpec) -> List[str]:
    """Collect invariant violations; empty list means the spec is well formed."""
    problems = []
    if int(spec.k) != spec.k or spec.k < 2:
        problems.append("k must be >= 2")
    a = spec.A
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        problems.append("A must be a square m x m matrix with m >= 1")
        return problems
    if not np.isfinite(a).all():
        problems.append("A entries must be finite")
    elif not is_nonnegative(a):
        problems.append("A must be nonnegative")
    m = a.shape[0]
    lags = max(int(spec.k) - 1, 0)
    q = spec.denom
    if q.shape != (m, lags, m):
        problems.append(
            f"denom must have shape (m, k-1, m) = ({m}, {lags}, {m}), got {q.shape}"
        )
    elif not np.isfinite(q).all():
        problems.append("denom entries must be finite")
    elif (q < 0).any():
        problems.append("denom must be nonnegative")
    return problems


@dataclass(frozen=True)
class InitialConditions:
    """The k nonnegative history vectors v_{1-k}, v_{2-k}, ..., v_0."""

    history: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.history, dtype=float)
        object.__setattr__(self, "history", _readonly(h))

    @classmethod
    def zeros(cls, k: int, m: int) -> "InitialConditions":
        return cls(np.zeros((k, m)))

    @classmethod
    def impulse(cls, k: int, vector: Sequence[float]) -> "InitialConditions":
        """All-zero history except v_{1-k}, which is set to ``vector``."""
        v = np.asarray(vector, dtype=float)
        h = np.zeros((k, v.shape[0]))
        h[0] = v
        return cls(h)

    def __len__(self) -> int:
        return self.history.shape[0]


def validate_initial(init: InitialConditions, spec: SystemSpec) -> List[str]:
    problems = []
    h = init.history
    if h.ndim != 2 or h.shape != (spec.k, spec.m):
        problems.append(
            f"initial conditions must be {spec.k} vectors of dimension {spec.m}, got shape {h.shape}"
        )
        return problems
    if not np.isfinite(h).all():
        problems.append("initial conditions must be finite")
    elif (h < 0).any():
        problems.append("initial conditions must be nonnegative")
    return problems


@dataclass(frozen=True)
class Trajectory:
    """A simulated orbit indexed by the recurrence index n.

    ``values`` stores rows for n = 1-k, ..., horizon (initial conditions
    first); ``horizon`` is the last generated index actually stored.  If
    the run overflowed, ``diverged_at`` is the step that produced a
    non-finite value and ``values`` ends at that step minus one.
    """

    spec: SystemSpec
    values: np.ndarray
    horizon: int
    diverged_at: Optional[int] = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", _readonly(v))

    @property
    def k(self) -> int:
        return self.spec.k

    @property
    def m(self) -> int:
        return self.spec.m

    @property
    def n_first(self) -> int:
        return 1 - self.k

    def index(self, n: int) -> int:
        """Row index of v_n (n = 1-k maps to row 0)."""
        i = n + self.k - 1
        if i < 0 or i >= self.values.shape[0]:
            raise IndexError(f"n = {n} outside stored range [{self.n_first}, {self.horizon}]")
        return i

    def value(self, n: int) -> np.ndarray:
        return self.values[self.index(n)]

    @property
    def generated(self) -> np.ndarray:
        """Rows for n >= 1 (excludes the initial conditions)."""
        return self.values[self.k:]

    @property
    def initial(self) -> np.ndarray:
        return self.values[: self.k]
