"""Negacirculant matrices and the two self-dual code families built on them.

A first row is written either as compact digits ``(10033210404)`` or
comma-separated ``(1,0,0,3,3,2,1,0,4,0,4)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from gf5lat.gf5 import NEG, P, LinearCode, as_f5


class RowParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class FirstRowSpec:
    entries: tuple[int, ...]

    def __post_init__(self):
        if any(not (0 <= e < P) for e in self.entries):
            raise ValueError(f"entries must lie in 0..4: {self.entries}")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @classmethod
    def of(cls, entries) -> "FirstRowSpec":
        return cls(tuple(int(e) for e in entries))

    def compact(self) -> str:
        return "(" + "".join(map(str, self.entries)) + ")"

    def commas(self) -> str:
        return "(" + ",".join(map(str, self.entries)) + ")"

    __str__ = commas


def parse_first_row(text: str) -> FirstRowSpec:
    """Parse ``(d1d2...dn)`` or ``(d1,d2,...,dn)``; digits must be 0..4.

    Raises RowParseError carrying the offending character's index in ``text``.
    """
    s = text.strip()
    offset = len(text) - len(text.lstrip())
    if not s.startswith("("):
        raise RowParseError("expected '('", offset)
    if not s.endswith(")"):
        raise RowParseError("expected ')'", offset + len(s) - 1)
    body = s[1:-1]
    if not body.strip():
        raise RowParseError("empty row", offset + 1)
    comma = "," in body
    entries = []
    expect_digit = True
    for i, ch in enumerate(body, start=offset + 1):
        if ch.isspace():
            continue
        if comma and ch == ",":
            if expect_digit:
                raise RowParseError("empty entry", i)
            expect_digit = True
            continue
        if not ch.isdigit():
            raise RowParseError(f"unexpected character {ch!r}", i)
        if comma and not expect_digit:
            raise RowParseError("missing ','", i)
        d = int(ch)
        if d >= P:
            raise RowParseError(f"digit {d} is not in GF(5)", i)
        entries.append(d)
        expect_digit = not comma
    if comma and expect_digit:
        raise RowParseError("trailing ','", offset + len(s) - 1)
    return FirstRowSpec(tuple(entries))


def _as_row(row) -> np.ndarray:
    if isinstance(row, str):
        row = parse_first_row(row)
    r = as_f5(list(row))
    if r.ndim != 1 or r.size == 0:
        raise ValueError("first row must be a non-empty vector")
    return r


def negacirculant(row) -> np.ndarray:
    """Each row is the previous one rotated right, wrapped entry negated."""
    r = _as_row(row)
    n = r.size
    m = np.empty((n, n), dtype=np.uint8)
    m[0] = r
    for i in range(1, n):
        prev = m[i - 1]
        m[i, 1:] = prev[:-1]
        m[i, 0] = NEG[prev[-1]]
    m.flags.writeable = False
    return m


def negacirculant_closed_form(row) -> np.ndarray:
    """Same matrix from the index formula: r[j-i] above the diagonal, -r[n+j-i] below."""
    r = _as_row(row).astype(np.int64)
    n = r.size
    i, j = np.indices((n, n))
    d = j - i
    m = np.where(d >= 0, r[d % n], -r[(n + d) % n])
    return as_f5(m)


def quasi_twisted_code(row) -> LinearCode:
    """The [2n, n] code generated by (I_n | A) with A negacirculant."""
    a = negacirculant(row)
    n = a.shape[0]
    return LinearCode(np.hstack([np.eye(n, dtype=np.uint8), a]))


def four_negacirculant_generator(row_a, row_b) -> np.ndarray:
    a = negacirculant(row_a).astype(np.int64)
    b = negacirculant(row_b).astype(np.int64)
    if a.shape != b.shape:
        raise ValueError(f"first rows differ in length: {a.shape[0]} vs {b.shape[0]}")
    n = a.shape[0]
    right = np.block([[a, b], [-b.T, a.T]])
    return as_f5(np.hstack([np.eye(2 * n, dtype=np.int64), right]))


def four_negacirculant_code(row_a, row_b) -> LinearCode:
    """The [4n, 2n] code generated by (I_2n | [[A, B], [-B^T, A^T]])."""
    return LinearCode(four_negacirculant_generator(row_a, row_b))
