"""Integer lattices with a norm denominator, Construction A, short vectors and
the norm-4 pair invariants."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from gf5lat.gf5 import P, LinearCode, is_self_dual
from gf5lat.lattice import intmat
from gf5lat.lattice.enumerate import enumerate_points
from gf5lat.lattice.lll import deep_insertion_lll, lll_gram

DEFAULT_DELTA = Fraction(99, 100)


class IntegerLattice:
    """Lattice spanned by the rows of an integer basis, scaled by 1/sqrt(denom).

    The norm of a coordinate vector x is (x . x) / denom.
    """

    def __init__(self, basis, denom: int = 1, *, reduced: bool = False):
        b = np.array(intmat.to_int_rows(basis), dtype=object)
        if b.ndim != 2 or b.shape[0] != b.shape[1]:
            raise ValueError("basis must be square")
        if denom <= 0:
            raise ValueError("denom must be positive")
        self._basis = b
        self.denom = int(denom)
        self._reduced = reduced
        if intmat.det(self.gram_num) == 0:
            raise ValueError("basis is singular")

    @property
    def n(self) -> int:
        return self._basis.shape[0]

    @property
    def basis(self) -> np.ndarray:
        return self._basis.astype(np.int64)

    @cached_property
    def gram_num(self) -> list[list[int]]:
        """B B^T (integer); the Gram matrix is this divided by denom."""
        return intmat.gram(self._basis)

    @cached_property
    def gram(self) -> list[list[Fraction]]:
        return [[Fraction(v, self.denom) for v in row] for row in self.gram_num]

    def is_integral(self) -> bool:
        return all(v % self.denom == 0 for row in self.gram_num for v in row)

    def integer_gram(self) -> np.ndarray:
        if not self.is_integral():
            raise ValueError("lattice is not integral")
        return np.array([[v // self.denom for v in row] for row in self.gram_num], dtype=np.int64)

    @cached_property
    def det_gram(self) -> Fraction:
        return Fraction(intmat.det(self.gram_num), self.denom**self.n)

    def is_unimodular(self) -> bool:
        return self.is_integral() and self.det_gram == 1

    def is_odd(self) -> bool:
        g = self.integer_gram()
        return bool(np.any(np.diag(g) % 2))

    def norm(self, x) -> Fraction:
        x = [int(v) for v in x]
        return Fraction(sum(v * v for v in x), self.denom)

    @cached_property
    def hnf(self) -> list[list[int]]:
        return intmat.hnf(self._basis, modulus=abs(intmat.det(self._basis)))

    def __contains__(self, x) -> bool:
        x = [int(v) for v in x]
        if len(x) != self.n:
            return False
        return not any(intmat.reduce_mod_hnf(x, self.hnf))

    def same_lattice(self, other: "IntegerLattice") -> bool:
        return self.denom == other.denom and self.hnf == other.hnf

    def __repr__(self) -> str:
        return f"IntegerLattice(n={self.n}, denom={self.denom})"

    @cached_property
    def lll(self) -> "IntegerLattice":
        return lll_reduce(self)


def lll_reduce(lat: IntegerLattice, delta=DEFAULT_DELTA, deep: bool = True) -> IntegerLattice:
    """Same lattice, LLL-reduced basis (exact integral arithmetic).

    With ``deep`` the basis first goes through deep-insertion LLL; the exact
    pass afterwards certifies the result is LLL-reduced for ``delta``.
    """
    if lat._reduced and Fraction(delta) == DEFAULT_DELTA:
        return lat
    start = lat._basis
    if deep:
        _, h = lll_gram(lat.gram_num, delta)
        start = np.array(deep_insertion_lll(np.array(h, dtype=object).dot(start), float(delta)), dtype=object)
    _, h = lll_gram(intmat.gram(start), delta)
    hb = np.array(h, dtype=object).dot(start)
    return IntegerLattice(hb, lat.denom, reduced=Fraction(delta) == DEFAULT_DELTA)


def lift(code: LinearCode) -> np.ndarray:
    """Integer lift of the generator with entries in {-2, ..., 2}."""
    g = code.generator.astype(np.int64)
    return np.where(g > 2, g - P, g)


def construction_a(code: LinearCode) -> IntegerLattice:
    """{x in Z^n : x mod 5 in C} with norm x.x/5; unimodular for self-dual C."""
    if not is_self_dual(code):
        raise ValueError("Construction A needs a self-dual code")
    n = code.n
    gens = np.vstack([code.generator.astype(np.int64), P * np.eye(n, dtype=np.int64)])
    return IntegerLattice(intmat.hnf(gens, modulus=P), P)


@dataclass(frozen=True)
class ShortVectorSet:
    """All lattice vectors of norm <= bound, one of each pair {v, -v}.

    The kept representative has its first nonzero coordinate positive; rows
    are sorted by (norm, coordinates).
    """

    bound: Fraction
    vectors: np.ndarray  # int coordinates, one row per representative
    norms: tuple[Fraction, ...]
    denom: int
    nodes: int = 0

    def __len__(self) -> int:
        return self.vectors.shape[0]

    def count(self, norm) -> int:
        return sum(1 for v in self.norms if v == norm)

    def at_norm(self, norm) -> np.ndarray:
        mask = np.array([v == norm for v in self.norms], dtype=bool)
        return self.vectors[mask] if len(self) else self.vectors

    def as_set(self) -> set[bytes]:
        return {row.tobytes() for row in self.vectors.astype(np.int64)}


def canonical_sign(vectors: np.ndarray) -> np.ndarray:
    v = np.asarray(vectors, dtype=np.int64)
    if v.size == 0:
        return v
    first = np.argmax(v != 0, axis=1)
    signs = np.sign(v[np.arange(v.shape[0]), first])
    signs[signs == 0] = 1
    return v * signs[:, None]


def _small_dtype(a: np.ndarray) -> np.ndarray:
    if a.size == 0:
        return a.astype(np.int8)
    m = int(np.abs(a).max())
    for dt in (np.int8, np.int16, np.int32):
        if m <= np.iinfo(dt).max:
            return a.astype(dt)
    return a


def short_vectors(lat: IntegerLattice, bound) -> ShortVectorSet:
    """Every vector of norm <= bound up to sign, by Fincke-Pohst on the LLL basis."""
    bound = Fraction(bound)
    if bound <= 0:
        raise ValueError("bound must be positive")
    red = lat.lll
    coeffs, nums, _, nodes, _ = enumerate_points(np.array(red.gram_num, dtype=np.int64), red.denom, bound)
    basis = red.basis
    vecs = canonical_sign(coeffs.astype(np.int64) @ basis) if len(coeffs) else np.zeros((0, lat.n), np.int64)
    sq = (vecs * vecs).sum(axis=1) if len(vecs) else np.zeros(0, np.int64)
    assert np.array_equal(sq, nums), "exact norm re-check failed"
    assert bool(np.all(sq <= bound * lat.denom)), "vector above bound"
    order = np.lexsort(tuple(vecs[:, j] for j in range(lat.n - 1, -1, -1)) + (sq,)) if len(vecs) else []
    vecs = vecs[order]
    sq = sq[order]
    return ShortVectorSet(
        bound=bound,
        vectors=_small_dtype(vecs),
        norms=tuple(Fraction(int(s), lat.denom) for s in sq),
        denom=lat.denom,
        nodes=nodes,
    )


def count_vectors(lat: IntegerLattice, bound) -> dict[Fraction, int]:
    """Number of vectors (both signs) at each norm <= bound, zero vector excluded."""
    red = lat.lll
    _, _, hist, _, _ = enumerate_points(np.array(red.gram_num, dtype=np.int64), red.denom, bound, store=False)
    return {Fraction(int(m), red.denom): 2 * int(c) for m, c in enumerate(hist) if c}


def minimum_norm(lat: IntegerLattice) -> Fraction:
    """Smallest nonzero norm: every smaller candidate norm is ruled out exhaustively."""
    red = lat.lll
    gnum = np.array(red.gram_num, dtype=np.int64)
    top = min(Fraction(red.gram_num[i][i], red.denom) for i in range(red.n))
    step = Fraction(1) if lat.is_integral() else Fraction(1, lat.denom)
    bound = step
    while bound < top:
        _, nums, _, _, complete = enumerate_points(gnum, red.denom, bound, max_found=1)
        if len(nums):
            break
        if not complete:
            raise AssertionError("enumeration stopped early")
        bound += step
    return min(count_vectors(lat, min(bound, top)))


def kissing_number(lat: IntegerLattice) -> int:
    m = minimum_norm(lat)
    return count_vectors(lat, m)[m]


@dataclass(frozen=True)
class InvariantPair:
    inv0: int
    inv1: int
    inv2: int
    half_kissing: int
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def inv3(self) -> int:
        return 0

    @property
    def inv4(self) -> int:
        return self.half_kissing

    def pair(self) -> tuple[int, int]:
        return (self.inv0, self.inv1)


def inner_products_histogram(vectors: np.ndarray, block: int = 1024) -> dict[int, int]:
    """Histogram of x.y (integer coordinates) over all ordered pairs of rows."""
    x = np.asarray(vectors, dtype=np.float64)
    counts: dict[int, int] = {}
    for s in range(0, x.shape[0], block):
        ip = np.rint(x[s : s + block] @ x.T).astype(np.int64)
        vals, cnt = np.unique(ip, return_counts=True)
        for v, c in zip(vals.tolist(), cnt.tolist()):
            counts[v] = counts.get(v, 0) + c
    return counts


def inv_pair(lat: IntegerLattice, vectors: ShortVectorSet | None = None) -> InvariantPair:
    """Counts of ordered pairs of norm-4 representatives with |x.y| = 0, 1, 2."""
    if vectors is None:
        vectors = short_vectors(lat, 4)
    if not vectors.norms or min(vectors.norms) != 4:
        raise ValueError("inv is defined only for lattices of minimum norm 4")
    plus = vectors.at_norm(Fraction(4))
    m = plus.shape[0]
    d = lat.denom
    hist = inner_products_histogram(plus)
    by_abs: dict[int, int] = {}
    for v, c in hist.items():
        if v % d:
            raise AssertionError("non-integral inner product in an integral lattice")
        by_abs[abs(v) // d] = by_abs.get(abs(v) // d, 0) + c
    # diagonal carries x.x = 4; every other pair must have |x.y| <= 2
    if by_abs.get(4, 0) != m or any(k > 4 or k == 3 for k in by_abs):
        raise AssertionError(f"inner products outside [-2, 2] off the diagonal: {by_abs}")
    inv = InvariantPair(by_abs.get(0, 0), by_abs.get(1, 0), by_abs.get(2, 0), m, extra=by_abs)
    if inv.inv0 + inv.inv1 + inv.inv2 != m * m - m:
        raise AssertionError("pair counts do not add up to m^2 - m")
    return inv


def invariant_distinct(a: InvariantPair, b: InvariantPair) -> bool:
    """True when the pairs differ, which rules out an isometry."""
    return a.pair() != b.pair()
