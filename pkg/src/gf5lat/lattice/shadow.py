"""Even sublattice, shadow cosets, unimodular neighbors and s-extremality.

For an odd unimodular L with even sublattice L0, the dual L0* splits into
four cosets of L0: L0 itself, L2 (the odd vectors of L) and the two shadow
cosets L1, L3.  Shadow coset vectors are half-integral in the coordinates of
L, so they are stored doubled: a doubled vector X has norm X.X / (4 denom).
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import lcm

import numpy as np

from gf5lat.lattice import intmat
from gf5lat.lattice.core import IntegerLattice, minimum_norm
from gf5lat.lattice.enumerate import enumerate_points


def _require_odd_unimodular(lat: IntegerLattice) -> np.ndarray:
    if not lat.is_unimodular():
        raise ValueError("lattice is not unimodular")
    g = lat.integer_gram()
    if not np.any(np.diag(g) % 2):
        raise ValueError("lattice is even; it has no proper even sublattice")
    return g


def normalize_scale(basis, denom: int) -> IntegerLattice:
    """Divide out a common factor g of all coordinates when g^2 divides denom."""
    b = intmat.to_int_rows(basis)
    from math import gcd

    g = 0
    for row in b:
        for v in row:
            g = gcd(g, v)
    while g > 1:
        p = next(q for q in range(2, g + 1) if g % q == 0)
        if denom % (p * p):
            break
        b = [[v // p for v in row] for row in b]
        denom //= p * p
        g //= p
    return IntegerLattice(b, denom)


def even_sublattice(lat: IntegerLattice) -> IntegerLattice:
    """Vectors of even norm: the kernel of x -> norm(x) mod 2, index 2 in L."""
    g = _require_odd_unimodular(lat)
    parity = [int(v) % 2 for v in np.diag(g)]
    n = lat.n
    p = parity.index(1)
    coeff = []
    for i in range(n):
        row = [0] * n
        if i == p:
            row[p] = 2
        else:
            row[i] = 1
            if parity[i]:
                row[p] = -1
        coeff.append(row)
    b = np.array(coeff, dtype=object).dot(lat._basis)
    mod = 2 * abs(intmat.det(lat._basis))
    return IntegerLattice(intmat.hnf(b, modulus=mod), lat.denom)


def characteristic_vector(lat: IntegerLattice) -> list[int]:
    """Coordinates of w in L with w.v = v.v (mod 2) for all v in L."""
    g = _require_odd_unimodular(lat)
    diag = [int(v) for v in np.diag(g)]
    c = intmat.solve(g.tolist(), diag)
    if any(x.denominator != 1 for x in c):
        raise AssertionError("characteristic vector is not integral")
    cw = [int(x) for x in c]
    return [int(v) for v in np.array(cw, dtype=object).dot(lat._basis)]


class ShadowDecomposition:
    """The four cosets of L0 in L0* and their norm statistics."""

    def __init__(self, lat: IntegerLattice):
        _require_odd_unimodular(lat)
        self.lattice = lat
        self.even = even_sublattice(lat)
        n = lat.n
        w = characteristic_vector(lat)
        g = lat.integer_gram()
        p = next(i for i in range(n) if g[i, i] % 2)
        bp = [int(v) for v in lat._basis[p]]
        self._mod2 = intmat.hnf([[2 * v for v in row] for row in self.even.hnf],
                                modulus=2 * abs(intmat.det(self.even.hnf)))
        reps = {
            "L0": [0] * n,
            "L2": [2 * v for v in bp],
            "shadow_a": w,
            "shadow_b": [x + 2 * y for x, y in zip(w, bp)],
        }
        canon = {k: tuple(intmat.reduce_mod_hnf(v, self._mod2)) for k, v in reps.items()}
        a, b = canon["shadow_a"], canon["shadow_b"]
        l1, l3 = (a, b) if a <= b else (b, a)
        self.coset_reps = {"L0": canon["L0"], "L1": l1, "L2": canon["L2"], "L3": l3}
        if len(set(self.coset_reps.values())) != 4:
            raise AssertionError("cosets of L0 in its dual are not distinct")

    def in_lattice(self, label: str) -> bool:
        rep = self.coset_reps[label]
        if any(v % 2 for v in rep):
            return False
        return [v // 2 for v in rep] in self.lattice

    def _coset_shift(self, label: str):
        red = self.even.lll
        rep = self.coset_reps[label]
        if not any(rep):
            return red, None, 1
        # rep = y (2 B0) with rational y
        y = intmat.solve_left(rep, [[2 * int(v) for v in row] for row in red.basis.tolist()])
        den = lcm(*(f.denominator for f in y))
        return red, np.array([int(f * den) for f in y], dtype=np.int64), den

    def enumerate_coset(self, label: str, bound, store: bool = False, max_found: int = 0):
        """Vectors of the coset with norm <= bound (the zero vector excluded).

        Returns (doubled coordinates or None, {norm: count}, complete).  For
        L0 both v and -v are counted but only one of them is stored.
        """
        red, snum, den = self._coset_shift(label)
        basis = red.basis
        gnum = np.array(red.gram_num, dtype=np.int64)
        coeffs, _, hist, _, complete = enumerate_points(
            gnum, red.denom, Fraction(bound), shift_num=snum, shift_den=den,
            store=store, max_found=max_found)
        mult = 2 if snum is None else 1
        scale = red.denom * den * den
        counts = {Fraction(m, scale): mult * int(c) for m, c in enumerate(hist) if c}
        vecs = None
        if store:
            # doubled coordinates: 2 (x + y) B0 = 2 (den x + snum) B0 / den
            shift = np.zeros(basis.shape[0], np.int64) if snum is None else snum
            num = 2 * ((den * coeffs.astype(np.int64) + shift) @ basis)
            if np.any(num % den):
                raise AssertionError("coset vector is not half-integral")
            vecs = num // den
        return vecs, counts, complete

    def coset_minimum(self, label: str, start, step, limit=None) -> Fraction:
        """Smallest norm in a coset whose norms all lie in start + step*Z.

        Every bound below the answer is enumerated exhaustively and found
        empty; at the answer a single vector is enough.
        """
        bound = Fraction(start)
        limit = Fraction(limit) if limit is not None else Fraction(self.lattice.n, 4) + 2
        while bound <= limit:
            vecs, counts, complete = self.enumerate_coset(label, bound, store=True, max_found=1)
            if counts:
                norm = next(iter(counts))
                if norm != bound:
                    raise AssertionError(f"coset norm {norm} off the expected grid")
                return bound
            if not complete:
                raise AssertionError("coset enumeration stopped early")
            bound += step
        raise AssertionError(f"no vector of norm <= {limit} in coset {label}")

    @cached_property
    def shadow_min(self) -> Fraction:
        # shadow norms are congruent to n/4 mod 2
        first = Fraction(self.lattice.n, 4) % 2
        return min(self.coset_minimum(lbl, first, 2) for lbl in ("L1", "L3"))

    def shadow_counts(self, bound) -> dict[Fraction, int]:
        total: dict[Fraction, int] = {}
        for lbl in ("L1", "L3"):
            _, counts, _ = self.enumerate_coset(lbl, bound)
            for k, v in counts.items():
                total[k] = total.get(k, 0) + v
        return dict(sorted(total.items()))


def shadow(lat: IntegerLattice) -> ShadowDecomposition:
    return ShadowDecomposition(lat)


def _neighbor(dec: ShadowDecomposition, label: str) -> IntegerLattice:
    lat = dec.lattice
    gens = [[2 * v for v in row] for row in dec.even.hnf] + [list(dec.coset_reps[label])]
    mod = abs(intmat.det([[2 * v for v in row] for row in dec.even.hnf]))
    return normalize_scale(intmat.hnf(gens, modulus=mod), 4 * lat.denom)


def neighbors(lat: IntegerLattice, dec: ShadowDecomposition | None = None):
    """N1 = L0 u L1 and N2 = L0 u L3, the other unimodular lattices containing L0."""
    if lat.n % 4:
        raise ValueError("unimodular neighbors through the shadow need n divisible by 4")
    dec = dec or ShadowDecomposition(lat)
    n1, n2 = _neighbor(dec, "L1"), _neighbor(dec, "L3")
    for m in (n1, n2):
        if not m.is_unimodular():
            raise AssertionError("neighbor is not unimodular")
    return n1, n2


def rains_sloane_bound(n: int) -> int:
    return 3 if n == 23 else 2 * (n // 24) + 2


def is_s_extremal(lat: IntegerLattice, dec: ShadowDecomposition | None = None,
                  min_norm: Fraction | None = None) -> tuple[bool, bool]:
    """(extremal, s-extremal) for an odd unimodular lattice."""
    dec = dec or ShadowDecomposition(lat)
    n = lat.n
    m = min_norm if min_norm is not None else minimum_norm(lat)
    extremal = m == rains_sloane_bound(n)
    s = dec.shadow_min
    if n == 23 and m == 3:
        return extremal, 4 * s == 15
    return extremal, 8 * m + 4 * s == 8 + n
