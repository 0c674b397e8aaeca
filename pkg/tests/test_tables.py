import logging

import pytest

from gf5lat.gf5 import is_self_dual
from gf5lat.tables import (
    KISSING,
    TABLE_IDS,
    TableFormatError,
    load_table,
    reference_table,
    reference_bounds,
    table_row,
)


@pytest.mark.parametrize("table_id,count,n", [
    ("t2", 50, 44), ("t3", 50, 44), ("t5", 50, 40), ("t6", 50, 40), ("t7", 30, 42), ("t8", 15, 38),
])
def test_table_shapes(table_id, count, n):
    rows = reference_table(table_id)
    assert len(rows) == count
    assert [r.index for r in rows] == list(range(1, count + 1))
    assert {r.n for r in rows} == {n}
    assert all(r.expected.kissing == KISSING[n] for r in rows)


def test_invariant_pair_counts():
    # every t2 and t5 row has a distinct pair
    for t in ("t2", "t5"):
        assert len({(r.expected.inv0, r.expected.inv1) for r in reference_table(t)}) == 50
    # t8 repeats pairs at rows 5/6/7, 8/9, 11/12 and 13/14/15
    t8 = reference_table("t8")
    pairs = {r.index: (r.expected.inv0, r.expected.inv1) for r in t8}
    for group in ((5, 6, 7), (8, 9), (11, 12), (13, 14, 15)):
        assert len({pairs[i] for i in group}) == 1
    assert len(set(pairs.values())) == 9


def test_stated_minimum_weights():
    assert table_row("t3", 29).expected.min_weight == 13
    assert table_row("t3", 50).expected.min_weight == 14
    assert table_row("t3", 1).expected.min_weight == 12
    assert table_row("t7", 19).expected.min_weight == 11
    assert table_row("t8", 2).expected.min_weight == 11


def test_rows_build_self_dual_codes():
    for t in TABLE_IDS:
        row = reference_table(t)[0]
        code = row.code()
        assert (code.n, code.k) == (row.n, row.n // 2)
        assert is_self_dual(code)


def test_row_format_round_trip(tmp_path):
    row = table_row("t8", 3)
    p = tmp_path / "one.txt"
    p.write_text(row.format() + "\n")
    (back,) = load_table(p)
    assert back.rows == row.rows
    assert (back.expected.inv0, back.expected.inv1) == (row.expected.inv0, row.expected.inv1)


def test_unknown_rows():
    with pytest.raises(KeyError):
        reference_table("t1")
    with pytest.raises(KeyError):
        table_row("t8", 16)


@pytest.mark.parametrize("text,fragment", [
    ("x (1,2)\n", "integer index"),
    ("1 (1,7)\n", r"not in GF\(5\)"),
    ("1 (1,2) 12 (3,4)\n", "after integer"),
    ("1 (1,2) 1x\n", "bad integer"),
])
def test_malformed_lines(tmp_path, text, fragment):
    p = tmp_path / "bad.txt"
    p.write_text(text)
    with pytest.raises(TableFormatError, match=fragment) as e:
        load_table(p)
    assert e.value.lineno == 1


def test_schema_validation(tmp_path):
    p = tmp_path / "short.txt"
    p.write_text("1 (1,0,1) 5 6\n")
    with pytest.raises(TableFormatError, match="19 entries"):
        load_table(p, "t8")
    good = table_row("t8", 1).format()
    p.write_text(good + "\n")
    with pytest.raises(TableFormatError, match="expected 15 rows"):
        load_table(p, "t8")


def test_empty_file_warns(tmp_path, caplog):
    p = tmp_path / "empty.txt"
    p.write_text("# nothing here\n\n")
    with caplog.at_level(logging.WARNING):
        assert load_table(p) == []
    assert "no rows" in caplog.text


def test_reference_bounds():
    assert reference_bounds(22) == (8, 10)
    assert reference_bounds(44) == (14, 19)
    assert reference_bounds(72) == (22, 29)
    for n in (21, 20, 74):
        with pytest.raises(ValueError):
            reference_bounds(n)
