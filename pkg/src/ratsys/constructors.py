"""Special initial conditions: periodic, period-2k, and unbounded seeds.

All three constructions zero the history except the oldest vector
v_{1-k}.  With that pattern the denominators collapse to 1 along the
surviving residue class, the system runs exactly linearly there, and the
orbit of v_{1-k} under the kernel matrix determines the behavior.
"""

from __future__ import annotations

import math
from typing import List

import numpy as np

from .linalg import (
    EIG_TOL,
    RHO_TOL,
    eig_symmetric,
    is_positive,
    is_symmetric,
    perron_pair,
)
from .model import InitialConditions, SystemSpec

#: Fixed generator for the randomized tail of the unbounded-seed cascade.
_CANDIDATE_RNG_SEED = 1093


class SeedConstructionError(RuntimeError):
    """No candidate start vector satisfied the projection requirements."""


def construct_periodic_seed(spec: SystemSpec) -> InitialConditions:
    """Seed whose orbit is periodic with prime period k.

    Requires spectral radius 1.  For strictly positive kernels the seed is
    the Perron vector; for 2x2 symmetric kernels any unit eigenvector for
    eigenvalue 1 with nonnegative components works.
    """
    a = spec.A
    if is_positive(a):
        r, w = perron_pair(a)
        if abs(r - 1.0) > RHO_TOL:
            raise ValueError(f"spectral radius must be 1, got {r!r}")
        return InitialConditions.impulse(spec.k, w)
    if spec.m == 2 and is_symmetric(a):
        dec = eig_symmetric(a)
        if abs(dec.spectral_radius - 1.0) > RHO_TOL:
            raise ValueError(
                f"spectral radius must be 1, got {dec.spectral_radius!r}"
            )
        for lam, w in zip(dec.eigenvalues, dec.eigenvectors):
            if abs(lam - 1.0) <= RHO_TOL and w.min() >= -EIG_TOL:
                vec = np.maximum(w, 0.0)
                vec = vec / np.linalg.norm(vec)
                return InitialConditions.impulse(spec.k, vec)
        raise ValueError("no nonnegative eigenvector for eigenvalue 1")
    raise ValueError(
        "periodic seed requires a strictly positive kernel or a 2x2 symmetric kernel"
    )


def _is_case3_kernel(a: np.ndarray) -> bool:
    """Anti-diagonal form [[0, g], [1/g, 0]]: off-diagonal product 1, zero diagonal."""
    return (
        a.shape == (2, 2)
        and a[0, 0] == 0.0
        and a[1, 1] == 0.0
        and a[0, 1] > 0.0
        and a[1, 0] > 0.0
        and abs(a[0, 1] * a[1, 0] - 1.0) <= RHO_TOL
    )


def construct_period2k_seed(spec: SystemSpec, a: float, b: float) -> InitialConditions:
    """Seed with prime period 2k for the anti-diagonal kernel [[0, g], [1/g, 0]].

    The start vector (a, b) must be nonnegative with a != g * b; equality
    would put it on the eigenvalue-1 eigenline and produce period k instead.
    """
    kernel = spec.A
    if spec.m != 2 or not _is_case3_kernel(kernel):
        raise ValueError(
            "period-2k seed requires the kernel form [[0, g], [1/g, 0]]"
        )
    if not (math.isfinite(a) and math.isfinite(b)) or a < 0 or b < 0:
        raise ValueError("a and b must be finite and nonnegative")
    g = float(kernel[0, 1])
    if a == g * b:
        raise ValueError(f"a = g * b = {a!r} yields period k, not 2k")
    return InitialConditions.impulse(spec.k, np.array([a, b]))


def _candidates(m: int) -> List[np.ndarray]:
    rng = np.random.default_rng(_CANDIDATE_RNG_SEED)
    cascade = [np.ones(m), np.arange(1.0, m + 1.0)]
    cascade.extend(rng.uniform(0.0, 1.0, (m, m)))
    return cascade


def construct_unbounded_seed(spec: SystemSpec) -> InitialConditions:
    """Seed whose orbit grows without bound when the spectral radius exceeds 1.

    Picks the first candidate start vector with nonzero projection on
    every eigenvector (all-ones, then (1, 2, ..., m), then m fixed-seed
    random nonnegative vectors).  Along the surviving residue class the
    orbit is A^{L+1} v_{1-k}, which is unbounded by the spectral gap.
    """
    a = spec.A
    if not is_symmetric(a):
        raise ValueError("unbounded seed requires a symmetric kernel")
    dec = eig_symmetric(a)
    if dec.spectral_radius <= 1.0 + RHO_TOL:
        raise ValueError(
            f"spectral radius must exceed 1, got {dec.spectral_radius!r}"
        )
    for cand in _candidates(spec.m):
        projections = dec.eigenvectors @ cand
        if (np.abs(projections) > EIG_TOL).all():
            return InitialConditions.impulse(spec.k, cand)
    raise SeedConstructionError(
        "no candidate start vector has nonzero projection on every eigenvector"
    )
