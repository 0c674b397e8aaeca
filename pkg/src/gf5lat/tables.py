"""Shipped table data: code first rows, expected invariants and the d5(n) bounds.

Each data file holds one row per line: the index, the first row(s) in the
parenthesized comma format, then optional integer columns.  Lines starting
with ``#`` are comments.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from gf5lat.codes import FirstRowSpec, four_negacirculant_code, parse_first_row, quasi_twisted_code
from gf5lat.gf5 import LinearCode

log = logging.getLogger(__name__)


class TableFormatError(ValueError):
    def __init__(self, path, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True)
class Expected:
    inv0: int | None = None
    inv1: int | None = None
    kissing: int | None = None
    min_weight: int | None = None


@dataclass(frozen=True)
class TableRow:
    table_id: str
    index: int
    rows: tuple[FirstRowSpec, ...]
    expected: Expected | None = None

    @property
    def family(self) -> str:
        return "four" if len(self.rows) == 2 else "qt"

    @property
    def n(self) -> int:
        return (4 if self.family == "four" else 2) * len(self.rows[0])

    def code(self) -> LinearCode:
        if self.family == "four":
            return four_negacirculant_code(*self.rows)
        return quasi_twisted_code(self.rows[0])

    def format(self) -> str:
        parts = [str(self.index)] + [r.commas() for r in self.rows]
        if self.expected is not None and self.expected.inv0 is not None:
            parts += [str(self.expected.inv0), str(self.expected.inv1)]
        return " ".join(parts)


@dataclass(frozen=True)
class _Schema:
    file: str
    nrows: int  # number of first rows per line
    width: int  # entries per first row
    ints: int  # trailing integer columns
    count: int  # expected number of lines


_SCHEMAS = {
    "t3": _Schema("t3.txt", 2, 11, 0, 50),
    "t6": _Schema("t6.txt", 2, 10, 0, 50),
    "t7": _Schema("t7.txt", 1, 21, 2, 30),
    "t8": _Schema("t8.txt", 1, 19, 2, 15),
}
_EXPECTED_FILES = {"t2": ("t2_expected.txt", "t3"), "t5": ("t5_expected.txt", "t6")}

KISSING = {38: 29260, 40: 19120, 42: 11844, 44: 6600}

# stated minimum weights: (default, {index: exception})
_MIN_WEIGHTS = {
    "t3": (12, {29: 13, 50: 14}),
    "t6": (12, {}),
    "t8": (11, {i: 10 for i in (1, 3, 4, 5, 8, 9, 12, 13, 15)}),
    "t7": (12, {**{i: 10 for i in (3, 5, 6, 22, 26, 28, 29)}, 19: 11}),
}

TABLE_IDS = ("t2", "t3", "t5", "t6", "t7", "t8")


def data_path(name: str) -> Path:
    return Path(str(resources.files("gf5lat") / "data" / name))


def _parse_line(path, lineno: int, line: str, schema: _Schema | None):
    tokens = line.split()
    try:
        index = int(tokens[0])
    except (IndexError, ValueError):
        raise TableFormatError(path, lineno, "line must start with an integer index") from None
    specs, ints = [], []
    for tok in tokens[1:]:
        if tok.startswith("("):
            if ints:
                raise TableFormatError(path, lineno, "row spec after integer columns")
            try:
                specs.append(parse_first_row(tok))
            except ValueError as e:
                raise TableFormatError(path, lineno, str(e)) from None
        else:
            try:
                ints.append(int(tok))
            except ValueError:
                raise TableFormatError(path, lineno, f"bad integer column {tok!r}") from None
    if schema is not None:
        if len(specs) != schema.nrows or any(len(s) != schema.width for s in specs):
            raise TableFormatError(path, lineno, f"expected {schema.nrows} row(s) of {schema.width} entries")
        if len(ints) != schema.ints:
            raise TableFormatError(path, lineno, f"expected {schema.ints} integer column(s)")
    return index, tuple(specs), ints


def load_table(path, table_id: str | None = None) -> list[TableRow]:
    """Parse a table file; with a known ``table_id`` the row count and arity are validated."""
    path = Path(path)
    schema = _SCHEMAS.get(table_id) if table_id else None
    rows = []
    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            index, specs, ints = _parse_line(path, lineno, line, schema)
            exp = Expected(inv0=ints[0], inv1=ints[1]) if len(ints) >= 2 else None
            rows.append(TableRow(table_id or path.stem, index, specs, exp))
    if not rows:
        log.warning("table file %s has no rows", path)
    if schema is not None and len(rows) != schema.count:
        raise TableFormatError(path, 0, f"expected {schema.count} rows, found {len(rows)}")
    return rows


def _load_pairs(name: str) -> dict[int, tuple[int, int]]:
    out = {}
    with open(data_path(name), encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise TableFormatError(name, lineno, "expected: index inv0 inv1")
            out[int(parts[0])] = (int(parts[1]), int(parts[2]))
    return out


def reference_table(table_id: str) -> list[TableRow]:
    """Rows of a shipped table with every stated expectation attached."""
    if table_id in _EXPECTED_FILES:
        fname, source = _EXPECTED_FILES[table_id]
        pairs = _load_pairs(fname)
        base = reference_table(source)
        return [TableRow(table_id, r.index, r.rows,
                         Expected(*pairs[r.index], r.expected.kissing, r.expected.min_weight))
                for r in base]
    if table_id not in _SCHEMAS:
        raise KeyError(f"unknown table {table_id!r}; choose from {', '.join(TABLE_IDS)}")
    rows = load_table(data_path(_SCHEMAS[table_id].file), table_id)
    default, special = _MIN_WEIGHTS[table_id]
    out = []
    for r in rows:
        inv = (r.expected.inv0, r.expected.inv1) if r.expected else (None, None)
        out.append(TableRow(table_id, r.index, r.rows,
                            Expected(*inv, KISSING[r.n], special.get(r.index, default))))
    return out


def table_row(table_id: str, index: int) -> TableRow:
    for r in reference_table(table_id):
        if r.index == index:
            return r
    raise KeyError(f"table {table_id} has no row {index}")


def reference_bounds(n: int) -> tuple[int, int]:
    """(lower, upper) for the largest minimum weight of a self-dual [n, n/2] code."""
    if n % 2 or not 22 <= n <= 72:
        raise ValueError("n must be even with 22 <= n <= 72")
    with open(data_path("t4_bounds.txt"), encoding="utf-8") as f:
        for raw in f:
            parts = raw.split()
            if parts and not parts[0].startswith("#") and int(parts[0]) == n:
                return int(parts[1]), int(parts[2])
    raise AssertionError(f"bounds file has no entry for n={n}")
