"""Fincke-Pohst enumeration of lattice points in an ellipsoid.

The tree walk uses a floating Cholesky factor with a slightly enlarged
radius; every leaf is then re-checked against the exact integer Gram matrix,
so the floating point only decides which candidates get looked at.
"""

from __future__ import annotations

import math

import numba as nb
import numpy as np

RADIUS_SLACK = 1e-6


def cholesky_form(g: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(diag, mu) with x^T g x = sum_i diag[i] * (x_i + sum_{j>i} mu[i,j] x_j)^2."""
    g = np.asarray(g, dtype=np.float64)
    n = g.shape[0]
    # decomposition from the last coordinate down, matching the walk order
    q = g.copy()
    diag = np.zeros(n)
    mu = np.zeros((n, n))
    for i in range(n):
        diag[i] = q[i, i]
        if diag[i] <= 0:
            raise ValueError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            mu[i, j] = q[i, j] / diag[i]
        for j in range(i + 1, n):
            for l in range(j, n):
                q[j, l] -= mu[i, j] * q[i, l]
                q[l, j] = q[j, l]
    return diag, mu


@nb.njit(cache=True)
def _walk(diag, mu, shift, radius, gnum, snum, scale, bound_num, symmetric,
          store, hist, max_nodes, max_found):
    """Enumerate integer x with (x + shift)^T G (x + shift) <= radius.

    Exact test: v = scale * x + snum must satisfy v^T gnum v <= bound_num.
    Returns (coefficients, exact numerators, nodes visited, complete flag);
    hist[m] counts accepted vectors with exact numerator m.
    """
    n = diag.shape[0]
    x = np.zeros(n, np.int64)
    hi = np.zeros(n, np.int64)
    center = np.zeros(n)
    rem = np.zeros(n + 1)
    cap = 1024
    out = np.zeros((cap, n), np.int32)
    norms = np.zeros(cap, np.int64)
    count = 0
    nodes = 0
    v = np.zeros(n, np.int64)
    slack = radius * 1e-9 + 1e-9

    i = n - 1
    rem[n] = radius
    # set up level i
    c = -shift[i]
    center[i] = c
    r = math.sqrt(max(rem[i + 1], 0.0) / diag[i]) + 1e-9
    lo = math.ceil(c - r)
    hi[i] = math.floor(c + r)
    if symmetric and lo < 0:
        lo = 0
    x[i] = lo
    while True:
        nodes += 1
        if max_nodes > 0 and nodes > max_nodes:
            return out[:count], norms[:count], nodes, False
        if x[i] > hi[i]:
            i += 1
            if i == n:
                break
            x[i] += 1
            continue
        y = x[i] - center[i]
        t = rem[i + 1] - diag[i] * y * y
        if t < -slack:
            x[i] += 1
            continue
        if i == 0:
            zero = True
            if symmetric:
                for j in range(n):
                    if x[j] != 0:
                        zero = False
                        break
            else:
                zero = False
            if not zero:
                # exact norm numerator
                for j in range(n):
                    v[j] = scale * x[j] + snum[j]
                e = 0
                for a in range(n):
                    if v[a] == 0:
                        continue
                    s = 0
                    for b in range(n):
                        s += gnum[a, b] * v[b]
                    e += v[a] * s
                if e <= bound_num:
                    if e < hist.shape[0]:
                        hist[e] += 1
                    if store:
                        if count == cap:
                            cap *= 2
                            out2 = np.zeros((cap, n), np.int32)
                            out2[:count] = out[:count]
                            out = out2
                            norms2 = np.zeros(cap, np.int64)
                            norms2[:count] = norms[:count]
                            norms = norms2
                        for j in range(n):
                            out[count, j] = x[j]
                        norms[count] = e
                    count += 1
                    if max_found > 0 and count >= max_found:
                        return out[:count], norms[:count], nodes, False
            x[0] += 1
            continue
        rem[i] = t
        i -= 1
        c = -shift[i]
        for j in range(i + 1, n):
            c -= mu[i, j] * (x[j] + shift[j])
        center[i] = c
        r = math.sqrt(max(t, 0.0) / diag[i]) + 1e-9
        lo = math.ceil(c - r)
        hi[i] = math.floor(c + r)
        if symmetric and lo < 0:
            above_zero = True
            for j in range(i + 1, n):
                if x[j] != 0:
                    above_zero = False
                    break
            if above_zero:
                lo = 0
        x[i] = lo
    if not store:
        count = 0
    return out[:count], norms[:count], nodes, True


def enumerate_points(gnum: np.ndarray, denom: int, bound, shift_num=None, shift_den: int = 1,
                     store: bool = True, max_nodes: int = 0, max_found: int = 0):
    """Integer x with ||x + shift||^2 <= bound, where ||y||^2 = y^T gnum y / denom.

    ``shift`` is ``shift_num / shift_den`` in coefficient coordinates.  With no
    shift only one of each pair {x, -x} is returned (the one whose last
    nonzero coefficient is positive) and the origin is skipped.

    Returns (coeffs, exact numerators of (shift_den*x + shift_num)^T gnum (...),
    histogram over those numerators, nodes, complete).  ``max_nodes`` and
    ``max_found`` stop the walk early (complete is then False).
    """
    from fractions import Fraction

    gnum = np.ascontiguousarray(np.asarray(gnum, dtype=np.int64))
    n = gnum.shape[0]
    bound = Fraction(bound)
    symmetric = shift_num is None
    if symmetric:
        snum = np.zeros(n, np.int64)
        shift_den = 1
    else:
        snum = np.asarray(shift_num, dtype=np.int64)
    # exact: (sd x + sn)^T gnum (sd x + sn) <= bound * denom * sd^2
    lim = bound * denom * shift_den * shift_den
    bound_num = lim.numerator // lim.denominator
    diag, mu = cholesky_form(gnum / denom)
    shift = snum.astype(np.float64) / shift_den
    radius = float(bound) * (1 + RADIUS_SLACK) + RADIUS_SLACK
    hist = np.zeros(bound_num + 1, np.int64)
    coeffs, norms, nodes, complete = _walk(
        diag, mu, shift, radius, gnum, snum, np.int64(shift_den), np.int64(bound_num),
        symmetric, store, hist, np.int64(max_nodes), np.int64(max_found),
    )
    return coeffs, norms, hist, int(nodes), bool(complete)
