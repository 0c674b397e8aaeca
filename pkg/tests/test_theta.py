from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gf5lat.gf5 import LinearCode
from gf5lat.lattice import IntegerLattice, construction_a
from gf5lat.lattice.shadow import neighbors
from gf5lat.theta import (
    QSeries,
    decompose_theta,
    delta8,
    format_series,
    format_symbolic,
    jacobi_theta,
    min_norm_prefix,
    parameters,
    shadow_theta,
    shadow_theta_from_lattice,
    theta_from_lattice,
)

series = st.lists(st.integers(-50, 50), min_size=1, max_size=12).map(QSeries)


@given(series, series, series)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(series, st.integers(0, 4))
def test_power_is_repeated_product(a, k):
    prod = QSeries([1] + [0] * a.units)
    for _ in range(k):
        prod = prod * a
    assert a**k == prod


def test_series_access_and_errors():
    s = QSeries.from_terms({0: 1, Fraction(1, 4): 3, 2: -5}, 2)
    assert s[Fraction(1, 4)] == 3 and s[2] == -5 and s[1] == 0
    assert s.precision == 2
    with pytest.raises(IndexError):
        s[3]
    with pytest.raises(ValueError):
        QSeries.from_terms({Fraction(1, 3): 1}, 1)
    with pytest.raises(ValueError):
        s.truncate(3)
    with pytest.raises(ValueError):
        QSeries([3, 1]).exact_div(2)
    assert QSeries([4, 2]).exact_div(2) == QSeries([2, 1])


def test_format_series():
    assert format_series(jacobi_theta(3, 9), show_precision=False) == "1 + 2q + 2q^4 + 2q^9"
    assert format_series(delta8(4), show_precision=False) == "q - 8q^2 + 28q^3 - 64q^4"
    assert format_series(jacobi_theta(2, 3), show_precision=False) == "2q^(1/4) + 2q^(9/4)"
    assert str(QSeries([0, 0, 0, 0, -1])) == "-q + O(q^(5/4))"


def test_jacobi_identity():
    t2, t3, t4 = (jacobi_theta(k, 12) for k in (2, 3, 4))
    assert t3**4 == t2**4 + t4**4


def test_delta8_definition():
    # Delta_8 = theta_2^4 theta_4^4 / 16 (in q), a series in integer powers
    t2, t4 = jacobi_theta(2, 6), jacobi_theta(4, 6)
    assert (t2**4 * t4**4).exact_div(16) == delta8(6)


@pytest.mark.parametrize("n", [1, 3, 5, 8])
def test_theta_of_zn(n):
    lat = IntegerLattice(np.eye(n, dtype=int))
    assert theta_from_lattice(lat, 4) == jacobi_theta(3, 4) ** n


def test_theta_of_e8():
    e8 = neighbors(IntegerLattice(np.eye(8, dtype=int)))[0]
    # exponents are norms x.x, so E8 has 1 + 240q^2 + 2160q^4 + 6720q^6
    s = theta_from_lattice(e8, 6)
    assert [s[m] for m in range(7)] == [1, 0, 240, 0, 2160, 0, 6720]
    dec = decompose_theta(8, s.truncate(1))
    # theta_3^8 = 1 + 16q + ..., so the q coefficient 0 forces a_1 = -16
    assert dec.a == (1, -16)
    assert dec.series(6) == s


@pytest.mark.parametrize("n", [4, 8, 12])
def test_shadow_theta_of_zn(n):
    lat = IntegerLattice(np.eye(n, dtype=int))
    dec = decompose_theta(n, theta_from_lattice(lat, n // 8 + 1))
    assert dec.a == (1,) + (0,) * (n // 8)
    assert shadow_theta(dec, 4) == jacobi_theta(2, 4) ** n
    assert shadow_theta(dec, 4) == shadow_theta_from_lattice(lat, 4)


def test_shadow_theta_of_construction_a_lattice():
    # a self-dual [8, 4] code over GF(5), direct sum of four copies of (1, 2)
    g = np.zeros((4, 8), dtype=int)
    for i in range(4):
        g[i, 2 * i : 2 * i + 2] = (1, 2)
    lat = construction_a(LinearCode(g))
    dec = decompose_theta(8, theta_from_lattice(lat, 2))
    assert shadow_theta(dec, 5) == shadow_theta_from_lattice(lat, 5)


def test_decompose_partial_leaves_free_coefficients():
    dec = decompose_theta(44, min_norm_prefix(44))
    assert dec.a[4:] == (None, None)
    filled = dec.with_values(a4=0, a5=0).series(3)
    assert [filled[m] for m in range(4)] == [1, 0, 0, 0]
    assert not dec.complete
    with pytest.raises(ValueError):
        dec.series(4)


def test_decompose_rejects_fractional_norms():
    with pytest.raises(ValueError):
        decompose_theta(8, {0: 1, Fraction(1, 2): 4})


EXPECTED_SERIES = {
    44: ("1 + (6600 + 16α)q^4 + (811008 - 128α - 65536β)q^5 + ...",
         "βq + (α - 76β)q^3 + (1622016 - 52α + 2806β)q^5 + ...", 5),
    40: ("1 + (19120 + 256α)q^4 + (1376256 - 4096α)q^5 + ...",
         "αq^2 + (40960 - 56α)q^4 + (87818240 + 1500α)q^6 + ...", 6),
    38: ("1 + (29260 + 1024α)q^4 + (1668352 - 20480α)q^5 + ...",
         "αq^(3/2) + (6080 - 58α)q^(7/2) + (18471040 + 1615α)q^(11/2) + ...", Fraction(11, 2)),
    42: ("1 + (11844 + 64α)q^4 + (1080576 - 768α - 262144β)q^5 + ...",
         "βq^(1/2) + (α - 78β)q^(5/2) + (265216 - 54α + 2961β)q^(9/2) + ...", Fraction(9, 2)),
}


@pytest.mark.parametrize("n", sorted(EXPECTED_SERIES))
def test_symbolic_series_match_expected(n):
    lattice_text, shadow_text, prec = EXPECTED_SERIES[n]
    assert format_symbolic(n, 5) == lattice_text
    assert format_symbolic(n, prec, shadow=True) == shadow_text


def test_parameters_round_trip():
    dec = decompose_theta(44, {0: 1, 1: 0, 2: 0, 3: 0, 4: 6600 + 16 * 3, 5: 811008 - 128 * 3 - 65536 * 2})
    assert parameters(dec) == {"alpha": 3, "beta": 2}
