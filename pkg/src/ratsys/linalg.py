"""Dense symmetric eigensolvers and spectral utilities for small matrices.

Everything here targets small dense systems (m up to ~16): a closed-form
path for 2x2 symmetric matrices, cyclic Jacobi rotations for larger ones,
and power iteration for the Perron-Frobenius pair of a strictly positive
matrix.  No LAPACK dependency; results are deterministic bit-for-bit for
identical inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

#: Residual / orthonormality tolerance for eigenpairs (entries assumed O(1)).
EIG_TOL = 1e-10
#: Half-width of the tolerance band used when comparing a spectral radius to 1.
RHO_TOL = 1e-9
#: Iteration budget for the Perron-Frobenius power iteration.
MAX_POWER_ITERS = 10_000

_POWER_RESIDUAL_TOL = 1e-14
_JACOBI_MAX_SWEEPS = 50


class PowerIterationError(RuntimeError):
    """Power iteration did not reach the residual target within the budget."""


class DegenerateProjectionError(ValueError):
    """A vector is numerically orthogonal to one of the eigenvectors."""


def as_matrix(a) -> np.ndarray:
    """Coerce to a square float64 matrix with finite entries."""
    m = np.asarray(a, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("matrix entries must be finite")
    return m


def is_symmetric(a: np.ndarray) -> bool:
    """Exact (not tolerance-based) symmetry test."""
    return bool((a == a.T).all())


def is_nonnegative(a: np.ndarray) -> bool:
    return bool((a >= 0.0).all())


def is_positive(a: np.ndarray) -> bool:
    return bool((a > 0.0).all())


@dataclass(frozen=True)
class EigenDecomposition:
    """Full real spectrum of a symmetric matrix.

    ``eigenvectors[i]`` is the unit eigenvector for ``eigenvalues[i]``;
    eigenvalues are ordered by descending absolute value with ties broken
    by descending signed value.  For symmetric input the rows are
    orthonormal to within ``EIG_TOL``.  ``perron`` optionally carries a
    Perron-Frobenius pair ``(r, w)`` with ``r == spectral_radius`` and
    ``w`` strictly positive.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    spectral_radius: float
    perron: Optional[Tuple[float, np.ndarray]] = None

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    def residual(self, a: np.ndarray) -> float:
        """max-norm eigenpair residual max_i ||A w_i - lambda_i w_i||_inf."""
        r = self.eigenvectors @ a.T - self.eigenvalues[:, None] * self.eigenvectors
        return float(np.abs(r).max())


def _eig2(a: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Closed-form spectrum of a symmetric 2x2 matrix.

    Eigenvalues come from lambda = (tr(A) +/- sqrt(tr^2(A) - 4 det(A))) / 2;
    eigenvectors from the Givens rotation that diagonalizes A, so the two
    rows are orthonormal by construction.
    """
    a00, a01, a11 = float(a[0, 0]), float(a[0, 1]), float(a[1, 1])
    tr = a00 + a11
    det = a00 * a11 - a01 * a01
    disc = tr * tr - 4.0 * det
    root = math.sqrt(disc) if disc > 0.0 else 0.0
    lam_plus = 0.5 * (tr + root)
    lam_minus = 0.5 * (tr - root)
    values = np.array([lam_plus, lam_minus])
    if a01 == 0.0:
        # already diagonal: exact axis eigenvectors
        if a00 >= a11:
            return values, np.eye(2)
        return values, np.array([[0.0, 1.0], [1.0, 0.0]])
    half = 0.5 * math.atan2(2.0 * a01, a00 - a11)
    c, s = math.cos(half), math.sin(half)
    # (c, s) is the eigenvector of the + root, (-s, c) of the - root.
    vectors = np.array([[c, s], [-s, c]])
    return values, vectors


def _jacobi(a0: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization; returns (eigenvalues, row eigenvectors)."""
    m = a0.shape[0]
    a = a0.copy()
    v = np.eye(m)
    fro = float(np.sqrt((a * a).sum()))
    if fro == 0.0:
        return np.zeros(m), v
    target = 1e-15 * fro
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = float(np.sqrt(2.0 * (a[np.triu_indices(m, 1)] ** 2).sum()))
        if off <= target:
            return np.diagonal(a).copy(), v.T.copy()
        for p in range(m - 1):
            for q in range(p + 1, m):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = 0.0
                a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    raise ArithmeticError("Jacobi iteration did not converge")


def _orient(vectors: np.ndarray) -> np.ndarray:
    """Flip signs so each row's largest-magnitude component is positive."""
    out = vectors.copy()
    for i in range(out.shape[0]):
        j = int(np.argmax(np.abs(out[i])))
        if out[i, j] < 0.0:
            out[i] = -out[i]
    return out


def eig_symmetric(a) -> EigenDecomposition:
    """Eigendecomposition of a real symmetric matrix.

    Uses the 2x2 closed form when possible and cyclic Jacobi rotations
    otherwise.  Rejects non-symmetric or non-finite input.
    """
    mat = as_matrix(a)
    if not is_symmetric(mat):
        raise ValueError("matrix must be symmetric")
    m = mat.shape[0]
    if m == 1:
        values = np.array([float(mat[0, 0])])
        vectors = np.array([[1.0]])
    elif m == 2:
        values, vectors = _eig2(mat)
    else:
        values, vectors = _jacobi(mat)
    order = sorted(range(m), key=lambda i: (-abs(values[i]), -values[i]))
    values = values[order]
    vectors = _orient(vectors[order])
    rho = float(np.abs(values).max()) if m else 0.0
    return EigenDecomposition(
        eigenvalues=values, eigenvectors=vectors, spectral_radius=rho
    )


def spectral_radius(a) -> float:
    """max_i |lambda_i| of a symmetric matrix."""
    return eig_symmetric(a).spectral_radius


def perron_pair(a) -> Tuple[float, np.ndarray]:
    """Perron-Frobenius eigenpair of a strictly positive matrix.

    Power iteration from a strictly positive start vector; returns
    ``(r, w)`` with ``r`` the dominant eigenvalue and ``w`` the unit
    eigenvector with strictly positive components.  The iteration stops
    once ``||A w - r w||_inf`` falls below ``1e-14 * max(1, r)``, well
    inside the ``EIG_TOL`` contract, so seeds built from ``w`` stay
    periodic to ~1e-14 over long runs.
    """
    mat = as_matrix(a)
    if not is_positive(mat):
        raise ValueError("perron_pair requires strictly positive entries")
    m = mat.shape[0]
    x = np.full(m, 1.0 / math.sqrt(m))
    for _ in range(MAX_POWER_ITERS):
        y = mat @ x
        r = float(x @ y)
        if float(np.abs(y - r * x).max()) <= _POWER_RESIDUAL_TOL * max(1.0, abs(r)):
            if float(x.min()) <= 0.0:
                raise PowerIterationError("iterate lost strict positivity")
            return r, x
        norm = float(np.linalg.norm(y))
        if norm == 0.0 or not math.isfinite(norm):
            raise PowerIterationError("power iteration degenerated")
        x = y / norm
    raise PowerIterationError(
        f"power iteration did not converge within {MAX_POWER_ITERS} iterations"
    )


def check_fact1(a, v, big_l: int) -> Tuple[bool, bool]:
    """Norm non-expansion of powers of a symmetric matrix with radius 1.

    Returns two flags for ``w = A^L v``: whether ``<w, w> <= <v, v>``
    holds (within ``EIG_TOL``) and whether equality holds within
    ``EIG_TOL``.  Equality is expected exactly when v has negligible
    projection onto the eigenvectors with |lambda| < 1.
    """
    mat = as_matrix(a)
    dec = eig_symmetric(mat)
    if abs(dec.spectral_radius - 1.0) > RHO_TOL:
        raise ValueError("check_fact1 requires spectral radius 1")
    if big_l < 1:
        raise ValueError("L must be a positive integer")
    vec = np.asarray(v, dtype=float)
    w = np.linalg.matrix_power(mat, big_l) @ vec
    lhs = float(w @ w)
    rhs = float(vec @ vec)
    return lhs <= rhs + EIG_TOL, abs(lhs - rhs) <= EIG_TOL


def check_fact2(a, v, growth_threshold: float, max_l: int) -> bool:
    """Unbounded growth of ||A^L v|| when the spectral radius exceeds 1.

    Requires v to have nonzero projection (above ``EIG_TOL``) on every
    eigenvector whose eigenvalue lies outside the unit disc, since those
    directions carry the growth; raises
    :class:`DegenerateProjectionError` otherwise.  Returns True iff
    ||A^L v|| exceeds ``growth_threshold`` for some L <= ``max_l``.
    """
    mat = as_matrix(a)
    dec = eig_symmetric(mat)
    if dec.spectral_radius <= 1.0 + RHO_TOL:
        raise ValueError("check_fact2 requires spectral radius greater than 1")
    vec = np.asarray(v, dtype=float)
    projections = dec.eigenvectors @ vec
    small = [
        i
        for i, (lam, p) in enumerate(zip(dec.eigenvalues, projections))
        if abs(lam) > 1.0 + RHO_TOL and abs(p) <= EIG_TOL
    ]
    if small:
        raise DegenerateProjectionError(
            f"vector is orthogonal to expanding eigenvector(s) {small}"
        )
    w = vec.copy()
    for _ in range(max_l):
        w = mat @ w
        if float(np.linalg.norm(w)) > growth_threshold:
            return True
    return False
