"""Exact integer matrix helpers: Hermite normal form, determinants, rational solves."""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def to_int_rows(m) -> list[list[int]]:
    return [[int(v) for v in row] for row in np.asarray(m, dtype=object)]


def hnf(rows, modulus: int | None = None) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice generated by ``rows``.

    Output rows are the nonzero rows of an upper echelon matrix with positive
    pivots and entries above each pivot reduced into [0, pivot).  When
    ``modulus`` is given the result is the HNF of span(rows) + modulus*Z^n,
    computed with entries kept below the modulus; pass it whenever
    modulus*Z^n is already inside the lattice.
    """
    a = [r[:] for r in to_int_rows(rows) if any(r)]
    if not a and modulus is None:
        return []
    ncols = len(a[0]) if a else None
    if modulus is not None:
        if ncols is None:
            raise ValueError("cannot infer the number of columns")
        return _hnf_mod(a, ncols, int(modulus))
    out: list[list[int]] = []
    for c in range(ncols):
        live = [r for r in a if r[c] != 0]
        rest = [r for r in a if r[c] == 0]
        piv = _euclid_column(live, rest, c, None)
        if piv is not None:
            out.append(piv)
        a = rest
    return _reduce_above(out)


def _euclid_column(live, rest, c, mod):
    while len(live) > 1:
        live.sort(key=lambda r: abs(r[c]))
        piv = live[0]
        nxt = [piv]
        for r in live[1:]:
            q = r[c] // piv[c]
            r2 = [x - q * y for x, y in zip(r, piv)]
            if mod is not None:
                r2 = r2[: c + 1] + [x % mod for x in r2[c + 1 :]]
            if r2[c] != 0:
                nxt.append(r2)
            elif any(r2):
                rest.append(r2)
        live[:] = nxt
    if not live:
        return None
    piv = live[0]
    if piv[c] < 0:
        piv = [-x for x in piv]
        if mod is not None:
            piv = piv[: c + 1] + [x % mod for x in piv[c + 1 :]]
    return piv


def _hnf_mod(a, ncols, mod):
    a = [[x % mod for x in r] for r in a]
    out = []
    for c in range(ncols):
        unit = [0] * ncols
        unit[c] = mod
        live = [r for r in a if r[c] != 0] + [unit]
        rest = [r for r in a if r[c] == 0]
        out.append(_euclid_column(live, rest, c, mod))
        a = [r for r in rest if any(r)]
    return _reduce_above(out)


def _reduce_above(out):
    pcols = [next(j for j, x in enumerate(r) if x) for r in out]
    for i in range(len(out)):
        c, p = pcols[i], out[i][pcols[i]]
        for h in range(i):
            q = out[h][c] // p
            if q:
                out[h] = [x - q * y for x, y in zip(out[h], out[i])]
    return out


def reduce_mod_hnf(v, h: list[list[int]]) -> list[int]:
    """Canonical representative of ``v`` modulo the full-rank HNF lattice ``h``."""
    v = [int(x) for x in v]
    for row in h:
        c = next(j for j, x in enumerate(row) if x)
        q = v[c] // row[c]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return v


def det(m) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    a = to_int_rows(m)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def solve_left(x, m) -> list[Fraction]:
    """Exact rational y with y @ m = x for square nonsingular integer m."""
    mt = to_int_rows(np.asarray(m, dtype=object).T)
    return solve(mt, [int(v) for v in x])


def solve(m, b) -> list[Fraction]:
    """Exact rational solution of m @ y = b."""
    n = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(bv)] for row, bv in zip(to_int_rows(m), b)]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [v * inv for v in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n] for row in a]


def inverse(m) -> list[list[Fraction]]:
    n = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(to_int_rows(m))]
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            raise ValueError("singular matrix")
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [v * inv for v in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def gram(basis) -> list[list[int]]:
    b = to_int_rows(basis)
    return [[sum(x * y for x, y in zip(u, v)) for v in b] for u in b]
