"""Isometry testing for integral lattices.

A cheap invariant cascade runs first (vector counts per norm, then the
multiset of per-vector fingerprints: inner-product histogram plus the size
of the vector's block in the non-orthogonality graph); a mismatch certifies
non-isometry.  Otherwise a Plesken-Souvignier style backtrack maps a basis
made of short vectors of L onto Gram-compatible short vectors of M, pruning
with fingerprints and forward-checked candidate lists.  Each complete
assignment defines an orthogonal map, which is accepted only if it carries
L onto M exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from gf5lat.lattice import intmat
from gf5lat.lattice.core import IntegerLattice, short_vectors

DEFAULT_NODE_BUDGET = 10**8


class Outcome(enum.Enum):
    ISOMETRIC = "isometric"
    NOT_ISOMETRIC = "not isometric"
    INCONCLUSIVE = "inconclusive"


class IsometryInconclusive(RuntimeError):
    """The backtrack exceeded its node budget without a decision."""


@dataclass
class IsometryResult:
    outcome: Outcome
    reason: str
    nodes: int = 0
    transform: list | None = field(default=None, repr=False)  # rows: images of L's basis in M coordinates

    def __bool__(self):
        raise TypeError("use .outcome; an inconclusive result has no truth value")


@dataclass
class _Config:
    """Short vectors (both signs) with norms and fingerprint classes."""

    lat: IntegerLattice
    bound: Fraction
    vectors: np.ndarray  # all vectors of norm <= bound, both signs
    norms: np.ndarray  # x.x numerators
    classes: np.ndarray  # fingerprint class id per vector
    class_keys: list  # fingerprint bytes per class id


def _spanning_bound(lat: IntegerLattice, start: Fraction | None = None):
    """Smallest norm bound whose short vectors span; returns (bound, vectors)."""
    red = lat.lll
    top = max(Fraction(red.gram_num[i][i], red.denom) for i in range(red.n))
    from gf5lat.lattice.core import minimum_norm

    bound = start if start is not None else minimum_norm(lat)
    step = Fraction(1) if lat.is_integral() else Fraction(1, lat.denom)
    while True:
        s = short_vectors(lat, bound)
        if len(s) and np.linalg.matrix_rank(s.vectors.astype(np.float64)) == lat.n:
            return bound, s
        if bound >= top:
            raise AssertionError("reduced basis vectors do not span")  # cannot happen
        bound += step


def _fingerprints(vectors: np.ndarray, norms: np.ndarray, block: int = 1024):
    """Per-vector histogram over (partner norm, |inner product|)."""
    x = vectors.astype(np.float64)
    norm_vals, norm_idx = np.unique(norms, return_inverse=True)
    maxip = int(norms.max())
    width = maxip + 1
    nbins = len(norm_vals) * width
    rows = []
    for s in range(0, x.shape[0], block):
        ip = np.abs(np.rint(x[s : s + block] @ x.T)).astype(np.int64)
        key = norm_idx[None, :] * width + ip
        hist = np.zeros((ip.shape[0], nbins), np.int64)
        for r in range(ip.shape[0]):
            hist[r] = np.bincount(key[r], minlength=nbins)
        rows.append(hist)
    hist = np.vstack(rows)
    # own norm and component size go first, so those always split classes
    comp = _component_sizes(x)
    return np.hstack([norms[:, None], comp[:, None], hist])


def _component_sizes(x: np.ndarray) -> np.ndarray:
    """Size of each vector's component in the graph joining non-orthogonal vectors.

    An isometry preserves this graph, so e.g. the roots of E8+E8 (two blocks)
    never match those of D16 (one block) even though their fingerprints do.
    """
    m = x.shape[0]
    label = np.full(m, -1, np.int64)
    sizes = np.zeros(m, np.int64)
    for start in range(m):
        if label[start] >= 0:
            continue
        label[start] = start
        frontier = np.array([start])
        members = [frontier]
        while len(frontier):
            touch = np.any(np.rint(x @ x[frontier].T) != 0, axis=1) & (label < 0)
            frontier = np.flatnonzero(touch)
            label[frontier] = start
            members.append(frontier)
        idx = np.concatenate(members)
        sizes[idx] = len(idx)
    return sizes


def _config(lat: IntegerLattice, bound: Fraction, s=None) -> _Config:
    if s is None:
        s = short_vectors(lat, bound)
    reps = s.vectors.astype(np.int64)
    norms = (reps * reps).sum(axis=1)
    fp = _fingerprints(reps, norms)
    keys, cls = np.unique(fp, axis=0, return_inverse=True)
    cls = cls.reshape(-1)
    vectors = np.vstack([reps, -reps])
    return _Config(lat, bound, vectors, np.concatenate([norms, norms]),
                   np.concatenate([cls, cls]), [k.tobytes() for k in keys])


def _class_multiset(c: _Config):
    ids, counts = np.unique(c.classes, return_counts=True)
    return sorted((c.class_keys[i], int(k)) for i, k in zip(ids, counts))


def _choose_basis(c: _Config) -> list[int]:
    """Greedy basis of short vectors, each step picking the rarest profile."""
    n = c.lat.n
    reps = c.vectors[: len(c.vectors) // 2]
    x = reps.astype(np.float64)
    prof = c.classes[: len(reps)][:, None].astype(np.int64)
    chosen: list[int] = []
    q = np.zeros((0, n))
    for _ in range(n):
        _, inv, counts = np.unique(prof, axis=0, return_inverse=True, return_counts=True)
        size = counts[inv.reshape(-1)]
        resid = x - (x @ q.T) @ q if len(q) else x
        indep = (resid * resid).sum(axis=1) > 1e-6 * (x * x).sum(axis=1)
        if not indep.any():
            raise AssertionError("short vectors do not span")
        cand = np.flatnonzero(indep)
        pick = int(cand[np.lexsort((cand, size[cand]))[0]])
        chosen.append(pick)
        v = resid[pick]
        q = np.vstack([q, v / np.linalg.norm(v)])
        ip = np.rint(x @ x[pick]).astype(np.int64)
        prof = np.hstack([prof, ip[:, None]])
    return chosen


def _leaf_transform(lb: IntegerLattice, bsel: np.ndarray, m: IntegerLattice, csel: np.ndarray, ycache: dict):
    """Images of L's basis under the map bsel -> csel, or None if not onto M."""
    if "y" not in ycache:
        inv = intmat.inverse(bsel.tolist())
        y = np.array(lb._basis, dtype=object).dot(np.array(inv, dtype=object))
        den = lcm(*(f.denominator for f in y.flat))
        ycache["y"] = np.array([[int(f * den) for f in row] for row in y], dtype=object)
        ycache["den"] = den
    num = ycache["y"].dot(np.array(csel, dtype=object))
    den = ycache["den"]
    if any(v % den for v in num.flat):
        return None
    img = [[int(v) // den for v in row] for row in num]
    if all(row in m for row in img):
        return img
    return None


def isometry_search(lat: IntegerLattice, other: IntegerLattice,
                    node_budget: int = DEFAULT_NODE_BUDGET) -> IsometryResult:
    if lat.n != other.n:
        return IsometryResult(Outcome.NOT_ISOMETRIC, "dimensions differ")
    if lat.is_integral() != other.is_integral():
        return IsometryResult(Outcome.NOT_ISOMETRIC, "integrality differs")
    if lat.det_gram != other.det_gram:
        return IsometryResult(Outcome.NOT_ISOMETRIC, "determinants differ")
    lat, other = common_scale(lat, other)
    bound, svs = _spanning_bound(lat)
    svm = short_vectors(other, bound)
    if sorted(svs.norms) != sorted(svm.norms):
        return IsometryResult(Outcome.NOT_ISOMETRIC, f"vector counts up to norm {bound} differ")
    cl, cm = _config(lat, bound, svs), _config(other, bound, svm)
    if _class_multiset(cl) != _class_multiset(cm):
        return IsometryResult(Outcome.NOT_ISOMETRIC, "inner-product fingerprints differ")
    return _backtrack(cl, cm, node_budget)


def common_scale(lat: IntegerLattice, other: IntegerLattice):
    """Rescale coordinates so both lattices share one denominator."""
    if lat.denom == other.denom:
        return lat, other
    r = Fraction(other.denom, lat.denom)
    p, q = _isqrt_exact(r.numerator), _isqrt_exact(r.denominator)
    if p is None or q is None:
        raise ValueError("denominators differ by a non-square factor; compare Gram matrices instead")
    return (IntegerLattice(lat._basis * p, lat.denom * p * p),
            IntegerLattice(other._basis * q, other.denom * q * q))


def _isqrt_exact(v: int):
    from math import isqrt

    r = isqrt(v)
    return r if r * r == v else None


def _backtrack(cl: _Config, cm: _Config, budget: int) -> IsometryResult:
    lat, other = cl.lat, cm.lat
    n = lat.n
    basis_idx = _choose_basis(cl)
    bsel = cl.vectors[basis_idx]
    target = bsel @ bsel.T
    mv = cm.vectors
    keys_m = {k: i for i, k in enumerate(cm.class_keys)}
    cand = []
    for k in range(n):
        want = keys_m.get(cl.class_keys[int(cl.classes[basis_idx[k]])], -1)
        cand.append(np.flatnonzero(cm.classes == want))
        if not len(cand[k]):
            return IsometryResult(Outcome.NOT_ISOMETRIC, "no candidate image for a basis vector")
    mvf = mv.astype(np.float64)
    nodes = 0
    ycache: dict = {}
    chosen = [0] * n
    # stack of (level, candidate lists for levels >= level, position)
    lists = [cand]
    pos = [0]
    level = 0
    while level >= 0:
        cur = lists[level]
        if pos[level] >= len(cur[level]):
            lists.pop()
            pos.pop()
            level -= 1
            if level >= 0:
                pos[level] += 1
            continue
        nodes += 1
        if nodes > budget:
            return IsometryResult(Outcome.INCONCLUSIVE, f"node budget {budget} exhausted", nodes)
        c = int(cur[level][pos[level]])
        chosen[level] = c
        if level == n - 1:
            img = _leaf_transform(lat, bsel, other, mv[chosen], ycache)
            if img is not None:
                return IsometryResult(Outcome.ISOMETRIC, "explicit isometry found", nodes, img)
            pos[level] += 1
            continue
        v = mvf[c]
        nxt = list(cur[: level + 1])
        dead = False
        for l in range(level + 1, n):
            idx = cur[l]
            keep = idx[np.rint(mvf[idx] @ v).astype(np.int64) == target[l, level]]
            if not len(keep):
                dead = True
                break
            nxt.append(keep)
        if dead:
            pos[level] += 1
            continue
        lists.append(nxt)
        pos.append(0)
        level += 1
    return IsometryResult(Outcome.NOT_ISOMETRIC, "exhaustive search found no isometry", nodes)


def is_isomorphic(lat: IntegerLattice, other: IntegerLattice,
                  node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    """True iff an isometry L -> M exists; raises IsometryInconclusive past the budget."""
    res = isometry_search(lat, other, node_budget)
    if res.outcome is Outcome.INCONCLUSIVE:
        raise IsometryInconclusive(f"{res.reason} after {res.nodes} nodes")
    return res.outcome is Outcome.ISOMETRIC
