"""Table verification and the seeded randomized code search."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

from gf5lat.codes import FirstRowSpec, four_negacirculant_code, quasi_twisted_code
from gf5lat.gf5 import LinearCode, is_self_dual
from gf5lat.lattice import construction_a, count_vectors, inv_pair, minimum_norm, short_vectors
from gf5lat.minweight import brouwer_zimmermann
from gf5lat.tables import KISSING, TableRow, reference_table


@dataclass
class Check:
    name: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class RowReport:
    table_id: str
    index: int
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        parts = []
        for c in self.checks:
            if c.ok:
                parts.append(f"{c.name}={c.actual}")
            else:
                parts.append(f"{c.name}={c.actual} (expected {c.expected})")
        return f"{status} {self.table_id} row {self.index}: " + " ".join(parts)

    def record(self) -> dict:
        return {
            "table": self.table_id,
            "index": self.index,
            "status": "PASS" if self.ok else "FAIL",
            "checks": {c.name: {"expected": c.expected, "actual": c.actual} for c in self.checks},
        }


def verify_row(row: TableRow, min_weight: bool = True, invariants: bool = True) -> RowReport:
    """Rebuild the code and lattice of a table row and compare every stated value."""
    rep = RowReport(row.table_id, row.index)
    code = row.code()
    sd = is_self_dual(code)
    rep.checks.append(Check("self_dual", True, sd))
    if not sd:
        return rep
    exp = row.expected
    if min_weight and exp is not None and exp.min_weight is not None:
        rep.checks.append(Check("d", exp.min_weight, brouwer_zimmermann(code).d))
    if not invariants:
        return rep
    lat = construction_a(code)
    m = minimum_norm(lat)
    rep.checks.append(Check("min", 4, int(m) if m.denominator == 1 else str(m)))
    if m != 4:
        return rep
    vecs = short_vectors(lat, 4)
    kissing = 2 * len(vecs)
    if exp is not None and exp.kissing is not None:
        rep.checks.append(Check("kissing", exp.kissing, kissing))
    if exp is not None and exp.inv0 is not None:
        inv = inv_pair(lat, vecs)
        rep.checks.append(Check("inv0", exp.inv0, inv.inv0))
        rep.checks.append(Check("inv1", exp.inv1, inv.inv1))
    return rep


def parse_range(text: str | None, available: Sequence[int]) -> list[int]:
    """'3', '1-5' or '1,4,7-9'; None selects everything available."""
    if text is None:
        return list(available)
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            a, b = part.split("-", 1)
            lo, hi = int(a), int(b)
            if lo > hi:
                raise ValueError(f"empty range {part!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(part))
    missing = [i for i in out if i not in available]
    if missing:
        raise ValueError(f"rows not in table: {missing}")
    return out


def verify_paper_tables(selection: dict[str, Iterable[int] | None], min_weight: bool = True,
                        invariants: bool = True) -> list[RowReport]:
    """selection maps a table id to row indices (None for all rows)."""
    reports = []
    for table_id, indices in selection.items():
        rows = {r.index: r for r in reference_table(table_id)}
        for i in (sorted(rows) if indices is None else indices):
            reports.append(verify_row(rows[i], min_weight=min_weight, invariants=invariants))
    return reports


# ----------------------------------------------------------------- search

FAMILIES = ("qt", "four")


@dataclass(frozen=True)
class SearchConfig:
    family: str
    n: int
    seed: int
    budget: int
    target_kissing: int | None = None
    candidates: tuple[tuple[FirstRowSpec, ...], ...] | None = None  # fixed search space

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.n % (4 if self.family == "four" else 2):
            raise ValueError(f"n={self.n} does not fit the {self.family} family")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    @property
    def kissing(self) -> int:
        if self.target_kissing is not None:
            return self.target_kissing
        if self.n not in KISSING:
            raise ValueError(f"no s-extremal kissing target known for n={self.n}")
        return KISSING[self.n]

    @property
    def row_length(self) -> int:
        return self.n // 4 if self.family == "four" else self.n // 2


@dataclass(frozen=True)
class SearchHit:
    trial: int
    rows: tuple[str, ...]
    inv0: int
    inv1: int
    min_weight: int


@dataclass
class SearchReport:
    config: SearchConfig
    hits: list[SearchHit]
    trials_run: int
    self_dual: int
    min_norm_4: int

    @property
    def distinct_invariant_pairs(self) -> int:
        return len({(h.inv0, h.inv1) for h in self.hits})

    def records(self) -> list[dict]:
        out = [{"type": "hit", **asdict(h), "rows": list(h.rows)} for h in self.hits]
        out.append({
            "type": "summary",
            "family": self.config.family,
            "n": self.config.n,
            "seed": self.config.seed,
            "trials_run": self.trials_run,
            "self_dual": self.self_dual,
            "min_norm_4": self.min_norm_4,
            "hits": len(self.hits),
            "distinct_invariant_pairs": self.distinct_invariant_pairs,
        })
        return out

    def to_json_lines(self) -> str:
        return "\n".join(json.dumps(r, sort_keys=True) for r in self.records())


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream for one trial, derived from (seed, trial index) only."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))


def sample_rows(config: SearchConfig, trial: int) -> tuple[FirstRowSpec, ...]:
    if config.candidates is not None:
        return config.candidates[trial]
    rng = trial_rng(config.seed, trial)
    m = config.row_length
    count = 2 if config.family == "four" else 1
    rows = []
    for j in range(count):
        r = rng.integers(0, 5, size=m)
        if j == 0:
            r[0] = rng.integers(1, 3)  # leading entry normalized to 1 or 2
        rows.append(FirstRowSpec.of(r))
    return tuple(rows)


def build_code(family: str, rows: Sequence[FirstRowSpec]) -> LinearCode:
    if family == "four":
        return four_negacirculant_code(*rows)
    return quasi_twisted_code(rows[0])


def evaluate(family: str, rows: Sequence[FirstRowSpec], target_kissing: int):
    """Run the search predicate; returns (stage reached, hit data or None).

    Stages: 0 not self-dual, 1 self-dual, 2 minimum norm 4, 3 hit.
    """
    code = build_code(family, rows)
    if not is_self_dual(code):
        return 0, None
    lat = construction_a(code)
    if minimum_norm(lat) != 4:
        return 1, None
    if count_vectors(lat, 4).get(4, 0) != target_kissing:
        return 2, None
    inv = inv_pair(lat)
    d = brouwer_zimmermann(code).d
    return 3, (inv.inv0, inv.inv1, d)


def search(config: SearchConfig) -> SearchReport:
    """Sample, filter and dedupe by invariant pair; trials are independent and ordered."""
    trials = config.budget if config.candidates is None else min(config.budget, len(config.candidates))
    hits: list[SearchHit] = []
    seen: set[tuple[int, int]] = set()
    sd = mn4 = 0
    for t in range(trials):
        rows = sample_rows(config, t)
        stage, data = evaluate(config.family, rows, config.kissing)
        sd += stage >= 1
        mn4 += stage >= 2
        if data is None:
            continue
        inv0, inv1, d = data
        if (inv0, inv1) in seen:
            continue
        seen.add((inv0, inv1))
        hits.append(SearchHit(t, tuple(r.commas() for r in rows), inv0, inv1, d))
    return SearchReport(config, hits, trials, sd, mn4)


def replay_hit(hit: SearchHit, family: str, target_kissing: int) -> bool:
    """Re-verify a hit from its stored first rows alone."""
    from gf5lat.codes import parse_first_row

    rows = [parse_first_row(r) for r in hit.rows]
    stage, data = evaluate(family, rows, target_kissing)
    return stage == 3 and data == (hit.inv0, hit.inv1, hit.min_weight)
