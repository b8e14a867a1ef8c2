"""Shared generators and independent oracles for the test suite."""

import numpy as np

from ratsys import InitialConditions, SystemSpec


def symmetric_from(rng, m, low=0.0, high=1.0):
    b = rng.uniform(low, high, (m, m))
    return 0.5 * (b + b.T)


def symmetric_nonneg_with_rho(rng, m, rho):
    """Random symmetric nonnegative matrix rescaled to the given spectral radius."""
    while True:
        a = symmetric_from(rng, m, 0.0, 1.0)
        r = float(np.abs(np.linalg.eigvalsh(a)).max())
        if r > 1e-6:
            return a * (rho / r)


def symmetric_positive_with_rho(rng, m, rho):
    while True:
        a = symmetric_from(rng, m, 0.1, 1.0)
        a = np.maximum(a, 0.05)
        r = float(np.abs(np.linalg.eigvalsh(a)).max())
        if r > 1e-6:
            return a * (rho / r)


def symmetric_signed_with_rho(rng, m, rho):
    a = symmetric_from(rng, m, -1.0, 1.0)
    r = float(np.abs(np.linalg.eigvalsh(a)).max())
    while r <= 1e-6:
        a = symmetric_from(rng, m, -1.0, 1.0)
        r = float(np.abs(np.linalg.eigvalsh(a)).max())
    return a * (rho / r)


def rank_one_unit(rng, m):
    """Rank-one nonnegative symmetric matrix with spectral radius 1."""
    w = rng.uniform(0.2, 1.0, m)
    w = w / np.linalg.norm(w)
    return np.outer(w, w)


def random_spec(rng, m, k, rho, denom_range=(0.5, 1.5), positive=False):
    if positive:
        a = symmetric_positive_with_rho(rng, m, rho)
    else:
        a = symmetric_nonneg_with_rho(rng, m, rho)
    denom = rng.uniform(denom_range[0], denom_range[1], (m, k - 1, m))
    return SystemSpec(k=k, A=a, denom=denom)


def random_init(rng, k, m, init_max=10.0):
    return InitialConditions(rng.uniform(0.0, init_max, (k, m)))


def scalar_two_equation_step(k, beta, gamma, delta, epsilon, B, C, D, E,
                             x_hist, y_hist, x_delay, y_delay):
    """Independent evaluator of the two defining scalar equations (m = 2).

    ``x_hist[j-1]`` and ``y_hist[j-1]`` are x_{n-j} and y_{n-j} for
    j = 1..k-1; ``x_delay`` and ``y_delay`` are x_{n-k} and y_{n-k}.
    Terms accumulate in the written order of the equations: the delayed
    numerator pair, then the B-terms, then the C-terms (numerator and
    x-denominator), and likewise D then E for the y-denominator.
    """
    num_x = 0.0
    num_x += beta * x_delay
    num_x += gamma * y_delay
    den_x = 1.0
    for j in range(1, k):
        den_x += B[j - 1] * x_hist[j - 1]
    for j in range(1, k):
        den_x += C[j - 1] * y_hist[j - 1]
    num_y = 0.0
    num_y += delta * x_delay
    num_y += epsilon * y_delay
    den_y = 1.0
    for j in range(1, k):
        den_y += D[j - 1] * x_hist[j - 1]
    for j in range(1, k):
        den_y += E[j - 1] * y_hist[j - 1]
    return num_x / den_x, num_y / den_y


def oracle_step_from_spec(spec, window):
    """Drive the scalar oracle from a SystemSpec and a window of k vectors."""
    assert spec.m == 2
    k = spec.k
    a = spec.A
    q = spec.denom
    window = [np.asarray(v, dtype=float) for v in window]
    x_delay, y_delay = float(window[0][0]), float(window[0][1])
    x_hist = [float(window[k - j][0]) for j in range(1, k)]
    y_hist = [float(window[k - j][1]) for j in range(1, k)]
    return scalar_two_equation_step(
        k,
        float(a[0, 0]), float(a[0, 1]), float(a[1, 0]), float(a[1, 1]),
        [float(q[0, j - 1, 0]) for j in range(1, k)],
        [float(q[0, j - 1, 1]) for j in range(1, k)],
        [float(q[1, j - 1, 0]) for j in range(1, k)],
        [float(q[1, j - 1, 1]) for j in range(1, k)],
        x_hist, y_hist, x_delay, y_delay,
    )
