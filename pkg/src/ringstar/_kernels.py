"""Compiled inner loops for the ring-star network."""

from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True)
def advance(state, sigma, mu, ring_on, star_on, local, n_neighbors, ring_sign, star_sign,
            guard, x_rec, y_rec, phi_rec, step0, n_transient, record_y, record_phi):
    """Advance ``state`` (N x 3, updated in place) through ``len(sigma)`` steps.

    ``local`` packs (a, b, c, k0, alpha, beta, k1, k2, k). Row 0 is the hub,
    rows 1..N-1 the ring. Step numbers are 1-based and global (``step0`` is the
    number of steps already taken); steps after ``n_transient`` are recorded.

    Returns (-1, -1) on success, otherwise (failing step, 0-based node).
    """
    a, b, c, k0, alpha, beta, k1, k2, k = (local[0], local[1], local[2], local[3], local[4],
                                          local[5], local[6], local[7], local[8])
    n = state.shape[0]
    p_count = n - 1
    r = n_neighbors
    inv_2r = 1.0 / (2.0 * r)
    x = np.empty(n)
    y = np.empty(n)
    phi = np.empty(n)
    for s in range(sigma.shape[0]):
        for m in range(n):
            x[m] = state[m, 0]
            y[m] = state[m, 1]
            phi[m] = state[m, 2]
        x1 = x[0]

        acc = 0.0
        for p in range(p_count):
            if star_on[s, p]:
                acc += mu[s, p + 1] * (x[p + 1] - x1)
        state[0, 0] = (x1 * x1 * math.exp(y[0] - x1) + k0
                       + k * x1 * (alpha + 3.0 * beta * phi[0] * phi[0]) + acc)

        for p in range(p_count):
            m = p + 1
            xm = x[m]
            val = xm * xm * math.exp(y[m] - xm) + k0 + k * xm * (alpha + 3.0 * beta * phi[m] * phi[m])
            if star_on[s, p]:
                val += star_sign * mu[s, m] * (xm - x1)
            ring = 0.0
            for d in range(1, r + 1):
                q = (p + d) % p_count
                if ring_on[s, p, d - 1]:
                    ring += sigma[s, q + 1] * (x[q + 1] - xm)
                q = (p - d + p_count) % p_count
                if ring_on[s, q, d - 1]:
                    ring += sigma[s, q + 1] * (x[q + 1] - xm)
            state[m, 0] = val + ring_sign * ring * inv_2r

        for m in range(n):
            state[m, 1] = a * y[m] - b * x[m] + c
            state[m, 2] = k1 * x[m] - k2 * phi[m]

        step = step0 + s + 1
        for m in range(n):
            xv = state[m, 0]
            if not (math.isfinite(xv) and math.isfinite(state[m, 1]) and math.isfinite(state[m, 2])):
                return step, m
            if abs(xv) > guard:
                return step, m

        col = step - n_transient - 1
        if col >= 0:
            for m in range(n):
                x_rec[m, col] = state[m, 0]
                if record_y:
                    y_rec[m, col] = state[m, 1]
                if record_phi:
                    phi_rec[m, col] = state[m, 2]
    return -1, -1


@njit(cache=True)
def sampen_counts(x, m, r, closed):
    """(A, B) template-pair counts; see ``entropy.match_counts``."""
    n_templates = x.shape[0] - m
    a = 0
    b = 0
    for i in range(n_templates - 1):
        for j in range(i + 1, n_templates):
            ok = True
            for t in range(m):
                dist = abs(x[i + t] - x[j + t])
                if (dist > r) if closed else (dist >= r):
                    ok = False
                    break
            if ok:
                b += 1
                dist = abs(x[i + m] - x[j + m])
                if (dist <= r) if closed else (dist < r):
                    a += 1
    return a, b
