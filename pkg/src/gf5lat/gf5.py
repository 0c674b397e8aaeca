"""Linear algebra over GF(5) and linear codes.

Matrices are numpy ``uint8`` arrays holding canonical residues 0..4.  Codes
keep their generator in reduced row echelon form, so two codes are equal
exactly when their generators are equal.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

P = 5
INV = np.array([0, 1, 3, 2, 4], dtype=np.int64)  # INV[0] unused
NEG = np.array([0, 4, 3, 2, 1], dtype=np.uint8)
UNITS = (1, 2, 3, 4)


def as_f5(m) -> np.ndarray:
    """Reduce an integer array-like to canonical residues, as ``uint8``."""
    a = np.asarray(m, dtype=np.int64)
    return np.mod(a, P).astype(np.uint8)


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


class RREF(NamedTuple):
    matrix: np.ndarray
    rank: int
    pivots: tuple[int, ...]


def rref(m) -> RREF:
    """Reduced row echelon form over GF(5).

    The returned matrix has the same shape as the input; zero rows sit at the
    bottom.
    """
    a = as_f5(m).astype(np.int64)
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        a[r] = (a[r] * INV[a[r, c]]) % P
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % P
        pivots.append(c)
        r += 1
    return RREF(_frozen(a.astype(np.uint8)), r, tuple(pivots))


def rank(m) -> int:
    return rref(m).rank


def weight(v) -> int:
    return int(np.count_nonzero(np.asarray(v)))


def dot(x, y) -> int:
    return int(np.dot(np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64)) % P)


class LinearCode:
    """An [n, k] linear code over GF(5) given by a full-rank generator matrix."""

    __slots__ = ("generator", "pivots")

    def __init__(self, generator) -> None:
        g = as_f5(generator)
        if g.ndim != 2:
            raise ValueError("generator must be a 2-d matrix")
        red = rref(g)
        if red.rank != g.shape[0]:
            raise ValueError(
                f"generator has {g.shape[0]} rows but rank {red.rank}"
            )
        self.generator = red.matrix
        self.pivots = red.pivots

    @classmethod
    def span(cls, rows, n: int | None = None) -> "LinearCode":
        """The code spanned by ``rows``; dependent rows are dropped."""
        g = as_f5(rows)
        if g.size == 0:
            if n is None:
                raise ValueError("length of an empty span is ambiguous")
            g = np.zeros((0, n), dtype=np.uint8)
        red = rref(g)
        return cls(red.matrix[: red.rank])

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}])"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.generator.shape == other.generator.shape and bool(
            np.array_equal(self.generator, other.generator)
        )

    def __hash__(self) -> int:
        return hash((self.generator.shape, self.generator.tobytes()))

    def encode(self, message) -> np.ndarray:
        m = np.asarray(message, dtype=np.int64)
        return ((m @ self.generator.astype(np.int64)) % P).astype(np.uint8)

    def __contains__(self, word) -> bool:
        w = as_f5(word).astype(np.int64)
        if w.shape != (self.n,):
            return False
        coeffs = w[list(self.pivots)]
        rest = (w - coeffs @ self.generator.astype(np.int64)) % P
        return not rest.any()

    def codewords(self):
        """Iterate over all 5^k codewords (small codes only)."""
        g = self.generator.astype(np.int64)
        for msg in np.ndindex(*(P,) * self.k):
            yield ((np.asarray(msg, dtype=np.int64) @ g) % P).astype(np.uint8)


def dual_code(code: LinearCode) -> LinearCode:
    """The dual code under the standard inner product mod 5."""
    n, k = code.n, code.k
    piv = list(code.pivots)
    free = [c for c in range(n) if c not in set(piv)]
    h = np.zeros((n - k, n), dtype=np.int64)
    if free:
        a = code.generator.astype(np.int64)[:, free]  # k x (n-k)
        h[:, piv] = (-a.T) % P
        h[np.arange(n - k), free] = 1
    return LinearCode(h)


def is_self_orthogonal(code: LinearCode) -> bool:
    g = code.generator.astype(np.int64)
    return not ((g @ g.T) % P).any()


def is_self_dual(code: LinearCode) -> bool:
    return 2 * code.k == code.n and is_self_orthogonal(code)


def puncture(code: LinearCode, coordinate: int) -> LinearCode:
    """Delete one coordinate from every codeword.

    If the deletion drops the rank the smaller code is returned.
    """
    if not 0 <= coordinate < code.n:
        raise IndexError(f"coordinate {coordinate} out of range for length {code.n}")
    g = np.delete(code.generator, coordinate, axis=1)
    return LinearCode.span(g, n=code.n - 1)
