"""Exact q-series for Jacobi theta functions, Delta_8, and the theta series of
odd unimodular lattices and their shadows.

Series are stored in the variable u = q^(1/4), so theta_2 and the
half-integral shadow exponents stay on an integer grid.  A series knows its
precision: the largest exponent (in q) whose coefficient is correct.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Number = int | Fraction


def _to_units(exponent) -> int:
    e = Fraction(exponent) * 4
    if e.denominator != 1:
        raise ValueError(f"exponent {exponent} is not a multiple of 1/4")
    return int(e)


class QSeries:
    """Truncated power series in q with exponents in (1/4)Z, exact coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Number]):
        if not len(coeffs):
            raise ValueError("a series needs at least the constant term")
        self.coeffs = tuple(c if isinstance(c, Fraction) and c.denominator != 1 else int(c) for c in coeffs)

    @classmethod
    def from_terms(cls, terms: dict, precision) -> "QSeries":
        """Build from {exponent: coefficient}; exponents above precision are dropped."""
        top = _to_units(precision)
        out = [0] * (top + 1)
        for e, c in terms.items():
            k = _to_units(e)
            if k < 0:
                raise ValueError("negative exponent")
            if k <= top:
                out[k] += c
        return cls(out)

    @property
    def precision(self) -> Fraction:
        return Fraction(len(self.coeffs) - 1, 4)

    @property
    def units(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, exponent) -> Number:
        k = _to_units(exponent)
        if k > self.units:
            raise IndexError(f"exponent {exponent} beyond precision {self.precision}")
        return self.coeffs[k] if k >= 0 else 0

    def truncate(self, precision) -> "QSeries":
        top = _to_units(precision)
        if top > self.units:
            raise ValueError("cannot raise the precision of a truncated series")
        return QSeries(self.coeffs[: top + 1])

    def terms(self) -> dict[Fraction, Number]:
        return {Fraction(k, 4): c for k, c in enumerate(self.coeffs) if c}

    def is_integral(self) -> bool:
        return all(not isinstance(c, Fraction) for c in self.coeffs)

    def _align(self, other):
        if not isinstance(other, QSeries):
            other = QSeries([other])
            m = self.units
            return self.coeffs, other.coeffs + (0,) * m, m
        m = min(self.units, other.units)
        return self.coeffs[: m + 1], other.coeffs[: m + 1], m

    def __add__(self, other) -> "QSeries":
        a, b, _ = self._align(other)
        return QSeries([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries([-x for x in self.coeffs])

    def __sub__(self, other) -> "QSeries":
        return self + (-other)

    def __rsub__(self, other) -> "QSeries":
        return (-self) + other

    def __mul__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            return QSeries([x * other for x in self.coeffs])
        m = min(self.units, other.units)
        a, b = self.coeffs, other.coeffs
        out = [0] * (m + 1)
        for i in range(m + 1):
            ai = a[i]
            if ai:
                for j in range(m + 1 - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return QSeries(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "QSeries":
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = QSeries([1] + [0] * self.units)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, d: int) -> "QSeries":
        """Divide every coefficient by d, insisting the result is integral."""
        out = []
        for c in self.coeffs:
            q = Fraction(c) / d
            if q.denominator != 1:
                raise ValueError(f"coefficient {c} is not divisible by {d}")
            out.append(int(q))
        return QSeries(out)

    def substitute_power(self, k: int) -> "QSeries":
        """f(q^k), kept at the same precision."""
        out = [0] * (self.units + 1)
        for i, c in enumerate(self.coeffs):
            if i * k > self.units:
                break
            out[i * k] = c
        return QSeries(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"QSeries({format_series(self)}, precision={self.precision})"

    def __str__(self) -> str:
        return format_series(self)


def _format_exponent(e: Fraction) -> str:
    if e == 0:
        return ""
    if e == 1:
        return "q"
    if e.denominator == 1:
        return f"q^{e.numerator}"
    return f"q^({e.numerator}/{e.denominator})"


def format_series(s: QSeries, show_precision: bool = True) -> str:
    """Ascending exponents, rational exponents as fractions: 1 + 6600q^4 + O(q^5)."""
    parts = []
    for e, c in s.terms().items():
        mono = _format_exponent(e)
        if mono and c in (1, -1):
            body = mono
        else:
            body = f"{abs(c)}{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        text = "0"
    else:
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
    if show_precision:
        nxt = s.precision + Fraction(1, 4)
        text += f" + O({_format_exponent(nxt) or '1'})"
    return text


def jacobi_theta(kind: int, precision, argument_power: int = 1) -> QSeries:
    """theta_2, theta_3 or theta_4 evaluated at q^argument_power."""
    if kind not in (2, 3, 4):
        raise ValueError("kind must be 2, 3 or 4")
    if argument_power not in (1, 2):
        raise ValueError("argument must be q or q^2")
    top = _to_units(precision)
    if top < 1:
        raise ValueError("precision must be positive")
    out = [0] * (top + 1)
    if kind == 2:
        # 2 * sum_{m >= 0} q^((m + 1/2)^2) = 2 * sum u^((2m+1)^2)
        m = 0
        while argument_power * (2 * m + 1) ** 2 <= top:
            out[argument_power * (2 * m + 1) ** 2] += 2
            m += 1
    else:
        out[0] = 1
        m = 1
        while argument_power * 4 * m * m <= top:
            sign = -1 if (kind == 4 and m % 2) else 1
            out[argument_power * 4 * m * m] += 2 * sign
            m += 1
    return QSeries(out)


def delta8(precision) -> QSeries:
    """q * prod_{m >= 1} (1 - q^(2m-1))^8 (1 - q^(4m))^8."""
    top = _to_units(precision)
    if top < 1:
        raise ValueError("precision must be positive")
    result = QSeries([0] * 4 + [1] + [0] * (top - 4)) if top >= 4 else QSeries([0] * (top + 1))
    one = [1] + [0] * top
    m = 1
    while 4 * (2 * m - 1) <= top:
        f = list(one)
        f[4 * (2 * m - 1)] = -1
        result = result * QSeries(f) ** 8
        if 16 * m <= top:
            g = list(one)
            g[16 * m] = -1
            result = result * QSeries(g) ** 8
        m += 1
    return result


def lattice_basis_series(n: int, precision) -> list[QSeries]:
    """theta_3^(n-8j) Delta_8^j for j = 0..floor(n/8)."""
    t3 = jacobi_theta(3, precision)
    d8 = delta8(precision)
    return [t3 ** (n - 8 * j) * d8**j for j in range(n // 8 + 1)]


def shadow_basis_series(n: int, precision) -> list[QSeries]:
    """(-1)^j 16^-j theta_2^(n-8j) theta_4(q^2)^(8j), coefficients possibly rational."""
    t2 = jacobi_theta(2, precision)
    t4 = jacobi_theta(4, precision, argument_power=2)
    out = []
    for j in range(n // 8 + 1):
        s = t2 ** (n - 8 * j) * t4 ** (8 * j)
        out.append(s * Fraction((-1) ** j, 16**j))
    return out


@dataclass(frozen=True)
class ThetaDecomposition:
    """Coefficients a_0..a_floor(n/8); None marks a coefficient the data leave free."""

    n: int
    a: tuple[int | None, ...]

    @property
    def complete(self) -> bool:
        return all(x is not None for x in self.a)

    def series(self, precision) -> QSeries:
        """Re-expand sum_j a_j theta_3^(n-8j) Delta_8^j."""
        self._require_complete()
        return _combine(self.a, lattice_basis_series(self.n, precision))

    def _require_complete(self):
        if not self.complete:
            free = [j for j, x in enumerate(self.a) if x is None]
            raise ValueError(f"a_j undetermined for j in {free}")

    def with_values(self, **values: int) -> "ThetaDecomposition":
        """Fill free a_j from keyword arguments a4=..., a5=...."""
        a = list(self.a)
        for key, v in values.items():
            j = int(key.lstrip("a"))
            if a[j] is not None and a[j] != v:
                raise ValueError(f"a_{j} is already {a[j]}")
            a[j] = int(v)
        return ThetaDecomposition(self.n, tuple(a))


def _combine(coeffs: Iterable[Number], basis: list[QSeries]) -> QSeries:
    total = None
    for c, s in zip(coeffs, basis):
        if c:
            term = s * c
            total = term if total is None else total + term
    if total is None:
        total = basis[0] * 0
    return total


def _solve_partial(rows: list[list[Fraction]], rhs: list[Fraction], nvars: int) -> list[Fraction | None]:
    """Exact elimination; returns the variables the system pins down."""
    m = [r[:] + [b] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(nvars):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(m)):
        if m[i][nvars] != 0:
            raise ValueError("theta data are inconsistent with any decomposition")
    out: list[Fraction | None] = [None] * nvars
    pivset = set(pivots)
    for i, c in enumerate(pivots):
        if all(m[i][j] == 0 for j in range(nvars) if j not in pivset):
            out[c] = m[i][nvars]
    return out


def decompose_theta(n: int, theta_l: QSeries | dict, shadow: QSeries | dict | None = None) -> ThetaDecomposition:
    """Solve for the a_j from known lattice (and optionally shadow) coefficients.

    ``theta_l`` is a series whose integer-exponent coefficients are known up
    to its precision, or a dict {exponent: coefficient} of known values.  The
    q^j coefficient of Delta_8^j is 1, so lattice data through q^floor(n/8)
    fix every a_j; shorter prefixes leave the top ones free, and shadow
    coefficients can pin those down.
    """
    known_l = _known(theta_l, integer_only=True)
    known_s = _known(shadow, integer_only=False) if shadow is not None else {}
    nv = n // 8 + 1
    rows, rhs = [], []
    if known_l:
        top = max(known_l)
        basis = lattice_basis_series(n, top)
        for e, c in known_l.items():
            rows.append([Fraction(b[e]) for b in basis])
            rhs.append(Fraction(c))
    if known_s:
        top = max(known_s)
        basis = shadow_basis_series(n, top)
        for e, c in known_s.items():
            rows.append([Fraction(b[e]) for b in basis])
            rhs.append(Fraction(c))
    sol = _solve_partial(rows, rhs, nv)
    a = []
    for j, v in enumerate(sol):
        if v is not None and v.denominator != 1:
            raise ValueError(f"a_{j} = {v} is not an integer: invalid theta prefix")
        a.append(None if v is None else int(v))
    return ThetaDecomposition(n, tuple(a))


def _known(data, integer_only: bool) -> dict[Fraction, Number]:
    if isinstance(data, QSeries):
        items = {Fraction(k, 4): c for k, c in enumerate(data.coeffs)}
    else:
        items = {Fraction(e): c for e, c in data.items()}
    if integer_only:
        bad = [e for e, c in items.items() if e.denominator != 1 and c]
        if bad:
            raise ValueError("an integral lattice has only integer norms")
        items = {e: c for e, c in items.items() if e.denominator == 1}
    return items


def min_norm_prefix(n: int, min_norm: int = 4) -> dict[int, int]:
    """Known coefficients of a lattice of minimum norm >= min_norm: 1, 0, 0, ..."""
    return {e: int(e == 0) for e in range(min(min_norm, n // 8 + 1))}


def shadow_theta(dec: ThetaDecomposition, precision) -> QSeries:
    """sum_j (-1)^j 16^-j a_j theta_2^(n-8j) theta_4(q^2)^(8j), checked to be integral."""
    dec._require_complete()
    s = _combine(dec.a, shadow_basis_series(dec.n, precision))
    if not s.is_integral():
        raise ValueError("shadow series has non-integral coefficients: inconsistent a_j")
    return s


def theta_from_lattice(lat, max_norm) -> QSeries:
    """1 + sum_m N_m q^m with N_m the number of vectors of norm m."""
    from gf5lat.lattice.core import count_vectors

    counts = count_vectors(lat, max_norm)
    terms = {0: 1}
    for norm, c in counts.items():
        terms[norm] = terms.get(norm, 0) + c
    return QSeries.from_terms(terms, max_norm)


def shadow_theta_from_lattice(lat, max_norm, dec=None) -> QSeries:
    """Enumerated shadow series through max_norm (coset enumeration)."""
    from gf5lat.lattice.shadow import ShadowDecomposition

    dec = dec or ShadowDecomposition(lat)
    return QSeries.from_terms(dec.shadow_counts(max_norm), max_norm)


# Free parameters in dimensions 38, 40, 42 and 44.  Each
# parametrization maps (alpha, beta) to the a_j left free by minimum norm 4.

LinearForm = tuple[Fraction, Fraction, Fraction]  # const + x*alpha + y*beta


def _lf(c=0, a=0, b=0) -> LinearForm:
    return (Fraction(c), Fraction(a), Fraction(b))


def _lf_add(p: LinearForm, q: LinearForm, s=1) -> LinearForm:
    return tuple(x + s * y for x, y in zip(p, q))  # type: ignore[return-value]


def _lf_scale(p: LinearForm, s) -> LinearForm:
    return tuple(x * s for x in p)  # type: ignore[return-value]


PARAMETRIZED_DIMENSIONS = (38, 40, 42, 44)


def symbolic_coefficients(n: int) -> list[LinearForm]:
    """a_0..a_floor(n/8) as linear forms in (alpha, beta) for minimum norm 4.

    n=38: a_4 = 2^10 alpha.  n=42: a_4 = 2^6 alpha, a_5 = -2^18 beta.
    n=40: the shadow has no q^0 term and alpha is its q^2 coefficient.
    n=44: beta is the shadow q^1 coefficient and alpha - 76 beta the q^3 one.
    """
    if n not in PARAMETRIZED_DIMENSIONS:
        raise ValueError(f"no parametrization for n={n}")
    base = decompose_theta(n, min_norm_prefix(n))
    a = [_lf(v) for v in base.a[:4]]
    if n == 38:
        return a + [_lf(a=2**10)]
    if n == 42:
        return a + [_lf(a=2**6), _lf(b=-(2**18))]
    # solve two shadow conditions for a_4, a_5
    if n == 40:
        conds = [(Fraction(0), _lf()), (Fraction(2), _lf(a=1))]
    else:
        conds = [(Fraction(1), _lf(b=1)), (Fraction(3), _lf(a=1, b=-76))]
    top = max(e for e, _ in conds)
    sb = shadow_basis_series(n, top)
    mat, rhs = [], []
    for e, target in conds:
        const = sum(Fraction(base.a[j]) * Fraction(sb[j][e]) for j in range(4))
        mat.append((Fraction(sb[4][e]), Fraction(sb[5][e])))
        rhs.append(_lf_add(target, _lf(const), -1))
    (p, q), (r, s) = mat
    det = p * s - q * r
    if det == 0:
        raise AssertionError("shadow conditions do not determine a_4, a_5")
    a4 = _lf_scale(_lf_add(_lf_scale(rhs[0], s), _lf_scale(rhs[1], q), -1), 1 / det)
    a5 = _lf_scale(_lf_add(_lf_scale(rhs[1], p), _lf_scale(rhs[0], r), -1), 1 / det)
    return a + [a4, a5]


def symbolic_series(n: int, precision, shadow: bool = False) -> dict[Fraction, LinearForm]:
    """Coefficients of theta_L (or theta_S) as linear forms in (alpha, beta)."""
    forms = symbolic_coefficients(n)
    basis = shadow_basis_series(n, precision) if shadow else lattice_basis_series(n, precision)
    out: dict[Fraction, LinearForm] = {}
    for k in range(_to_units(precision) + 1):
        e = Fraction(k, 4)
        acc = _lf()
        for f, b in zip(forms, basis):
            acc = _lf_add(acc, _lf_scale(f, Fraction(b.coeffs[k])))
        if any(acc):
            out[e] = acc
    return out


def parameters(dec: ThetaDecomposition) -> dict[str, Fraction]:
    """alpha (and beta) for a fully determined decomposition in a parametrized dimension."""
    dec._require_complete()
    forms = symbolic_coefficients(dec.n)
    for j in range(4):
        if forms[j][0] != dec.a[j]:
            raise ValueError("decomposition is not that of a minimum-norm-4 lattice")
    eqs = [(forms[j], Fraction(dec.a[j])) for j in range(4, len(forms))]
    # each equation: const + x alpha + y beta = value
    names = ["alpha"] if dec.n in (38, 40) else ["alpha", "beta"]
    rows = [[f[1], f[2]][: len(names)] for f, _ in eqs]
    rhs = [v - f[0] for f, v in eqs]
    sol = _solve_partial(rows, rhs, len(names))
    if any(v is None for v in sol):
        raise AssertionError("parameters are not determined by the a_j")
    return dict(zip(names, sol))  # type: ignore[arg-type]


def _format_form(f: LinearForm) -> str:
    c, a, b = f
    pieces = []
    if c:
        pieces.append(str(c))
    for coef, name in ((a, "α"), (b, "β")):
        if not coef:
            continue
        mag = abs(coef)
        body = name if mag == 1 else f"{mag}{name}"
        if pieces:
            pieces.append(("- " if coef < 0 else "+ ") + body)
        else:
            pieces.append(("-" if coef < 0 else "") + body)
    if not pieces:
        return "0"
    return " ".join(pieces)


def format_symbolic(n: int, precision, shadow: bool = False) -> str:
    """Display with symbolic parameters, e.g. 1 + (6600 + 16α)q^4 + ..."""
    parts = []
    for e, f in symbolic_series(n, precision, shadow).items():
        mono = _format_exponent(e)
        text = _format_form(f)
        nterms = sum(1 for x in f if x)
        if mono and nterms > 1:
            text = f"({text})"
        if mono and text == "1":
            text = ""
        parts.append(f"{text}{mono}")
    return " + ".join(parts) + " + ..."
