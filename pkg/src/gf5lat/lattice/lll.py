"""Integral LLL reduction on a Gram matrix (exact, no floating point).

Works with the subdeterminants d_i of the leading Gram minors and the
integers lambda_{k,j} = d_j * mu_{k,j}, so every quantity stays integral.
"""

from __future__ import annotations

from fractions import Fraction


def lll_gram(g, delta: Fraction = Fraction(99, 100)) -> tuple[list[list[int]], list[list[int]]]:
    """Reduce the positive definite integer Gram matrix ``g``.

    Returns (reduced Gram, transform H) with reduced = H g H^T and H unimodular.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    num, den = delta.numerator, delta.denominator
    n = len(g)
    b = [[int(x) for x in row] for row in g]
    h = [[int(i == j) for j in range(n)] for i in range(n)]
    if n <= 1:
        return b, h
    d = [0] * (n + 1)  # d[i+1] = det of leading (i+1) minor; d[0] = 1
    d[0] = 1
    lam = [[0] * n for _ in range(n)]

    def gs_row(k):
        for j in range(k + 1):
            u = b[k][j]
            for i in range(j):
                u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
            if j < k:
                lam[k][j] = u
            else:
                if u <= 0:
                    raise ValueError("Gram matrix is not positive definite")
                d[k + 1] = u

    def redi(k, l):
        if 2 * abs(lam[k][l]) <= d[l + 1]:
            return
        q = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
        hk, hl = h[k], h[l]
        for j in range(n):
            hk[j] -= q * hl[j]
        gkk = b[k][k] - 2 * q * b[k][l] + q * q * b[l][l]
        bk, bl = b[k], b[l]
        for j in range(n):
            if j != k:
                v = bk[j] - q * bl[j]
                bk[j] = v
                b[j][k] = v
        bk[k] = gkk
        lam[k][l] -= q * d[l + 1]
        lk, ll = lam[k], lam[l]
        for i in range(l):
            lk[i] -= q * ll[i]

    def swapi(k, kmax):
        h[k], h[k - 1] = h[k - 1], h[k]
        b[k], b[k - 1] = b[k - 1], b[k]
        for row in b:
            row[k], row[k - 1] = row[k - 1], row[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lm = lam[k][k - 1]
        bb = (d[k - 1] * d[k + 1] + lm * lm) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lm * t) // d[k]
            lam[i][k - 1] = (bb * t + lm * lam[i][k]) // d[k + 1]
        d[k] = bb

    d[1] = b[0][0]
    if d[1] <= 0:
        raise ValueError("Gram matrix is not positive definite")
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            gs_row(k)
        redi(k, k - 1)
        # Lovasz: d_k d_{k-2} + lam^2 >= delta d_{k-1}^2 (1-based)
        lm = lam[k][k - 1]
        if den * (d[k + 1] * d[k - 1] + lm * lm) < num * d[k] * d[k]:
            swapi(k, kmax)
            k = max(1, k - 1)
            continue
        for l in range(k - 2, -1, -1):
            redi(k, l)
        k += 1
    return b, h


def is_lll_reduced(g, delta: Fraction = Fraction(99, 100)) -> bool:
    """Check size reduction and the Lovasz condition with exact Gram-Schmidt."""
    n = len(g)
    mu = [[Fraction(0)] * n for _ in range(n)]
    bstar = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            s = Fraction(g[i][j]) - sum(mu[j][t] * mu[i][t] * bstar[t] for t in range(j))
            mu[i][j] = s / bstar[j]
        bstar[i] = Fraction(g[i][i]) - sum(mu[i][t] ** 2 * bstar[t] for t in range(i))
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for i in range(1, n):
        if bstar[i] < (Fraction(delta) - mu[i][i - 1] ** 2) * bstar[i - 1]:
            return False
    return True


def deep_insertion_lll(basis, delta: float = 0.99, max_iter: int = 10**6):
    """LLL with deep insertions (Schnorr-Euchner) on an integer basis.

    Row operations are exact integer updates; floating Gram-Schmidt only
    chooses them, so the output always spans the same lattice.  Used as a
    preprocessing step: it flattens the Gram-Schmidt profile, which shrinks
    the enumeration tree by one to two orders of magnitude in dimension 40+.
    """
    import numpy as np

    b = [list(map(int, row)) for row in basis]
    n = len(b)
    k = 1
    it = 0
    while k < n and it < max_iter:
        it += 1
        m = np.array(b[: k + 1], dtype=np.float64)
        _, r = np.linalg.qr(m.T)
        rd = np.diag(r)
        mu = (r / rd[:, None]).T
        for j in range(k - 1, -1, -1):
            q = round(mu[k, j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                mu[k, : j + 1] -= q * mu[j, : j + 1]
        bs = rd * rd
        c = float(sum(x * x for x in b[k]))
        ins = None
        for i in range(k):
            if c >= delta * bs[i]:
                c -= mu[k, i] ** 2 * bs[i]
            else:
                ins = i
                break
        if ins is None:
            k += 1
        else:
            b.insert(ins, b.pop(k))
            k = max(ins, 1)
    return b
