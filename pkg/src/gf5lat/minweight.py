"""Exact minimum weight of GF(5) codes (Brouwer-Zimmermann) and a brute-force oracle.

For each information set the code is put in systematic form and every
message of Hamming weight r is expanded, with the first nonzero message
entry fixed to 1 since weight is invariant under unit scaling.  Once level r
is complete on a set whose rank falls short of k by ``delta``, every codeword
not yet seen carries at least ``r + 1 - delta`` nonzeros on that set, and
those bounds add up over disjoint sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numba as nb
import numpy as np

from gf5lat.gf5 import INV, P, LinearCode, rref

BRUTE_FORCE_LIMIT = 10**8


@dataclass(frozen=True)
class InfoSet:
    columns: tuple[int, ...]
    rank: int
    pivots: np.ndarray  # k pivot columns of the systematic form, set columns first
    free: np.ndarray  # remaining columns
    redundancy: np.ndarray  # k x (n - k) block of the systematic form on ``free``


@dataclass(frozen=True)
class MinWeightResult:
    d: int
    witness: np.ndarray
    exact: bool
    lower_bound: int
    enumerated_levels: int
    info_sets: list[tuple[int, ...]]
    trace: list[tuple[int, int, int]] = field(default_factory=list)  # (level, lb, ub)
    words_generated: int = 0

    def __str__(self) -> str:
        return f"d={self.d}" if self.exact else f"d>={self.lower_bound}"


def normalize(word: np.ndarray) -> np.ndarray:
    """Scale so the first nonzero entry is 1 (the lexicographically least multiple)."""
    w = np.asarray(word, dtype=np.int64)
    nz = np.flatnonzero(w)
    if nz.size == 0:
        return w.astype(np.uint8)
    return ((w * INV[w[nz[0]]]) % P).astype(np.uint8)


def information_sets(code: LinearCode, max_deficiency: int | None = None) -> list[InfoSet]:
    """Greedy disjoint information sets, full-rank sets first.

    Columns are consumed left to right; each round takes the pivot columns of
    the generator restricted to the columns not yet used.
    """
    g = code.generator
    n, k = code.n, code.k
    remaining = list(range(n))
    sets = []
    while remaining:
        sub = rref(g[:, remaining])
        if sub.rank == 0:
            break
        cols = tuple(remaining[p] for p in sub.pivots)
        if max_deficiency is not None and k - sub.rank > max_deficiency:
            break
        sets.append(_systematic(g, cols))
        used = set(cols)
        remaining = [c for c in remaining if c not in used]
    return sets


def _systematic(g: np.ndarray, cols: tuple[int, ...]) -> InfoSet:
    n = g.shape[1]
    order = list(cols) + [c for c in range(n) if c not in set(cols)]
    red = rref(g[:, order])
    pivots = np.array([order[p] for p in red.pivots], dtype=np.int64)
    free = np.array([c for c in range(n) if c not in set(pivots.tolist())], dtype=np.int64)
    m = np.empty_like(red.matrix)
    m[:, order] = red.matrix
    return InfoSet(
        columns=tuple(cols),
        rank=len(cols),
        pivots=pivots,
        free=free,
        redundancy=np.ascontiguousarray(m[:, free]),
    )


@nb.njit(cache=True)
def _lex_less(a, b):
    for j in range(a.shape[0]):
        if a[j] != b[j]:
            return a[j] < b[j]
    return False


@nb.njit(cache=True)
def _full_word(idx, cf, depth, i, c, red, pivots, free, n, out):
    # out <- normalized codeword for message (idx[:depth], cf[:depth]) + c * e_i
    for j in range(n):
        out[j] = 0
    for t in range(depth):
        out[pivots[idx[t]]] = cf[t]
    out[pivots[i]] = c
    for j in range(free.shape[0]):
        out[free[j]] = red[j]
    first = 0
    for j in range(n):
        if out[j] != 0:
            first = out[j]
            break
    inv = 1
    if first == 2:
        inv = 3
    elif first == 3:
        inv = 2
    elif first == 4:
        inv = 4
    for j in range(n):
        out[j] = (out[j] * inv) % 5


@nb.njit(cache=True)
def _scan_level(mult, pivots, free, n, r, best_w, best_word, collect_w, collected, n_collected):
    """Expand all messages of weight r with leading coefficient 1.

    mult[c, i] holds c times redundancy row i.  Returns the updated best
    weight, collection count and number of words generated; best_word and
    collected are updated in place.
    """
    k = mult.shape[1]
    m = mult.shape[2]
    top = r - 1
    idx = np.zeros(r, np.int64)
    cf = np.ones(r, np.int64)
    acc = np.zeros((r, m), np.uint8)
    red = np.empty(m, np.uint8)
    word = np.empty(n, np.uint8)
    cap = collected.shape[0]
    generated = 0
    d = 0
    if top > 0:
        idx[0] = -1
        cf[0] = 4
    while True:
        if top > 0:
            maxc = 1 if d == 0 else 4
            if cf[d] < maxc:
                cf[d] += 1
            else:
                idx[d] += 1
                cf[d] = 1
                if idx[d] > k - (r - d):
                    d -= 1
                    if d < 0:
                        break
                    continue
            src = acc[d]
            dst = acc[d + 1]
            row = mult[cf[d], idx[d]]
            for j in range(m):
                s = src[j] + row[j]
                dst[j] = s - 5 if s >= 5 else s
            if d + 1 < top:
                d += 1
                idx[d] = idx[d - 1]
                cf[d] = 4
                continue
            start = idx[top - 1] + 1
            maxleaf = 4
        else:
            start = 0
            maxleaf = 1
        base = acc[top]
        for i in range(start, k):
            for c in range(1, maxleaf + 1):
                row = mult[c, i]
                nz = 0
                for j in range(m):
                    s = base[j] + row[j]
                    nz += (s != 0) & (s != 5)
                w = r + nz
                generated += 1
                if w <= best_w or w == collect_w:
                    for j in range(m):
                        s = base[j] + row[j]
                        red[j] = s - 5 if s >= 5 else s
                    _full_word(idx, cf, top, i, c, red, pivots, free, n, word)
                    if w < best_w:
                        best_w = w
                        best_word[:] = word
                    elif w == best_w and _lex_less(word, best_word):
                        best_word[:] = word
                    if w == collect_w and n_collected < cap:
                        collected[n_collected, :] = word
                        n_collected += 1
        if top == 0:
            break
    return best_w, n_collected, generated


def _multiples(info: InfoSet) -> np.ndarray:
    red = info.redundancy.astype(np.int64)
    return np.ascontiguousarray(
        np.stack([(c * red) % P for c in range(P)]).astype(np.uint8)
    )


class _Enumerator:
    """Level-by-level enumeration state shared by the public entry points."""

    def __init__(self, code: LinearCode):
        if code.k == 0:
            raise ValueError("zero-dimensional code has no minimum weight")
        self.code = code
        self.k = code.k
        self.sets = information_sets(code)
        self.mults = [_multiples(s) for s in self.sets]
        self.done = [0] * len(self.sets)
        self.best_w = code.n + 1
        self.best_word = np.zeros(code.n, np.uint8)
        self.generated = 0

    def lower_bound(self) -> int:
        lb = sum(
            max(0, done + 1 - (self.k - s.rank)) for done, s in zip(self.done, self.sets)
        )
        return max(lb, 1)

    def run_level(self, j: int, r: int, collect_w: int = -1, collected=None, n_collected=0):
        s = self.sets[j]
        if r > self.k:
            self.done[j] = r
            return n_collected
        if collected is None:
            collected = np.zeros((0, self.code.n), np.uint8)
        bw, n_collected, gen = _scan_level(
            self.mults[j], s.pivots, s.free, self.code.n, r,
            self.best_w, self.best_word, collect_w, collected, n_collected,
        )
        self.best_w = int(bw)
        self.generated += int(gen)
        self.done[j] = r
        return n_collected

    def active(self, j: int, r: int) -> bool:
        # a set short of full rank by delta says nothing until level delta
        return r + 1 - (self.k - self.sets[j].rank) > 0

    def advance(self, r: int):
        """Bring every useful set up to level r; yields after each set."""
        for j in range(len(self.sets)):
            if not self.active(j, r):
                continue
            while self.done[j] < r:
                self.run_level(j, self.done[j] + 1)
            yield j


def brouwer_zimmermann(code: LinearCode, stop_at: int | None = None) -> MinWeightResult:
    """Minimum weight of ``code``.

    With ``stop_at`` the search ends as soon as the certified lower bound
    reaches that value, reporting ``d >= stop_at`` unless the exact value
    was settled first.
    """
    e = _Enumerator(code)
    trace = []
    level = 0
    lb = e.lower_bound()
    while lb < e.best_w and (stop_at is None or lb < stop_at):
        level += 1
        for _ in e.advance(level):
            lb = e.lower_bound()
            trace.append((level, lb, e.best_w))
            if lb >= e.best_w or (stop_at is not None and lb >= stop_at):
                break
        if level > code.k:
            break
    exact = lb >= e.best_w
    return MinWeightResult(
        d=e.best_w if exact else lb,
        witness=e.best_word.copy(),
        exact=exact,
        lower_bound=min(lb, e.best_w),
        enumerated_levels=level,
        info_sets=[s.columns for s in e.sets],
        trace=trace,
        words_generated=e.generated,
    )


def find_words_of_weight(code: LinearCode, w: int, limit: int) -> list[np.ndarray]:
    """Up to ``limit`` distinct codewords of weight exactly ``w``.

    Not exhaustive in general; once the certified lower bound passes ``w``
    every such word has been seen, so an empty result is then a proof.
    """
    if w > code.n:
        raise ValueError(f"weight {w} exceeds length {code.n}")
    if limit <= 0 or w <= 0:
        return []
    e = _Enumerator(code)
    buf = np.zeros((max(limit, 64), code.n), np.uint8)
    found: dict[bytes, np.ndarray] = {}
    level = 0
    while len(found) < limit and e.lower_bound() <= w and level <= code.k:
        level += 1
        for j in range(len(e.sets)):
            if not e.active(j, level):
                continue
            while e.done[j] < level and len(found) < limit:
                count = e.run_level(j, e.done[j] + 1, collect_w=w, collected=buf)
                for row in buf[:count]:
                    base = row.astype(np.int64)
                    for u in (1, 2, 3, 4):
                        word = ((base * u) % P).astype(np.uint8)
                        found.setdefault(word.tobytes(), word)
    words = sorted(found.values(), key=lambda v: v.tobytes())
    return words[:limit]


def brute_force_min_weight(code: LinearCode) -> int:
    """Minimum nonzero weight by enumerating every message."""
    k, n = code.k, code.n
    if k == 0:
        raise ValueError("zero-dimensional code has no minimum weight")
    if P**k > BRUTE_FORCE_LIMIT:
        raise ValueError(f"5^{k} messages exceeds the brute-force limit")
    g = code.generator.astype(np.int64)
    best = n
    # messages with leading nonzero 1 suffice; enumerate by leading position
    for lead in range(k):
        tail = k - lead - 1
        msgs = _all_vectors(tail)
        words = (g[lead][None, :] + msgs @ g[lead + 1 :]) % P if tail else g[lead][None, :] % P
        best = min(best, int(np.count_nonzero(words, axis=1).min()))
    return best


def _all_vectors(length: int) -> np.ndarray:
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((P,) * length).reshape(length, -1).T
    return grids.astype(np.int64)
