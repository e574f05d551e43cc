"""Exact multivariate Laurent polynomials over arc-indexed variables.

Also hosts the cluster-variable expansion (sum over snake-graph matchings),
the closed form for incoming-fan series, and the Ptolemy / skein checks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Callable, Iterable, Mapping

Exponents = tuple  # sorted tuple of (variable, nonzero int exponent)


class NonMonomialDivisor(ValueError):
    pass


class DegenerateQuad(ValueError):
    pass


def _merge(a: Exponents, b: Exponents, sign: int = 1) -> Exponents:
    out = dict(a)
    for v, k in b:
        e = out.get(v, 0) + sign * k
        if e:
            out[v] = e
        else:
            out.pop(v, None)
    return tuple(sorted(out.items()))


@dataclass(frozen=True)
class Monomial:
    exponents: Exponents
    coeff: int = 1

    @classmethod
    def of(cls, exps: Mapping[str, int] | None = None, coeff: int = 1) -> "Monomial":
        items = tuple(sorted((v, k) for v, k in (exps or {}).items() if k))
        return cls(items, coeff)

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(_merge(self.exponents, other.exponents), self.coeff * other.coeff)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if other.coeff not in (1, -1):
            raise NonMonomialDivisor(f"coefficient {other.coeff} is not a unit")
        return Monomial(_merge(self.exponents, other.exponents, -1), self.coeff * other.coeff)

    def exponent(self, var: str) -> int:
        return dict(self.exponents).get(var, 0)

    def text(self) -> str:
        return _term_text(self.exponents, self.coeff, first=True)


def _factor_text(exps: Exponents) -> str:
    return "*".join(v if k == 1 else f"{v}^{k}" for v, k in exps)


def _term_text(exps: Exponents, c: int, first: bool) -> str:
    body = _factor_text(exps)
    mag = abs(c)
    if not body:
        core = str(mag)
    elif mag == 1:
        core = body
    else:
        core = f"{mag}*{body}"
    if first:
        return ("-" if c < 0 else "") + core
    return (" - " if c < 0 else " + ") + core


def _sort_key(exps: Exponents):
    return (sum(k for _, k in exps), exps)


class LaurentPolynomial:
    """Immutable finite sum of Laurent monomials with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponents, int] | None = None):
        clean = {e: c for e, c in (terms or {}).items() if c}
        self._terms = dict(sorted(clean.items(), key=lambda kv: _sort_key(kv[0])))
        self._hash = None

    # constructors
    @classmethod
    def var(cls, name: str) -> "LaurentPolynomial":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, c: int) -> "LaurentPolynomial":
        return cls({(): c})

    @classmethod
    def from_monomial(cls, m: Monomial) -> "LaurentPolynomial":
        return cls({m.exponents: m.coeff})

    @classmethod
    def from_monomials(cls, ms: Iterable[Monomial]) -> "LaurentPolynomial":
        acc: dict[Exponents, int] = {}
        for m in ms:
            acc[m.exponents] = acc.get(m.exponents, 0) + m.coeff
        return cls(acc)

    # access
    @property
    def terms(self) -> dict[Exponents, int]:
        return dict(self._terms)

    def monomials(self) -> list[Monomial]:
        return [Monomial(e, c) for e, c in self._terms.items()]

    def variables(self) -> set[str]:
        return {v for e in self._terms for v, _ in e}

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # arithmetic
    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPolynomial(acc)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        acc: dict[Exponents, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _merge(e1, e2)
                acc[e] = acc.get(e, 0) + c1 * c2
        return LaurentPolynomial(acc)

    def mul_monomial(self, m: Monomial) -> "LaurentPolynomial":
        return LaurentPolynomial(
            {_merge(e, m.exponents): c * m.coeff for e, c in self._terms.items()})

    def div_by_monomial(self, m: Monomial | "LaurentPolynomial") -> "LaurentPolynomial":
        if isinstance(m, LaurentPolynomial):
            if len(m) != 1:
                raise NonMonomialDivisor("divisor has more than one term")
            m = m.monomials()[0]
        if m.coeff not in (1, -1):
            raise NonMonomialDivisor(f"coefficient {m.coeff} is not a unit")
        return LaurentPolynomial(
            {_merge(e, m.exponents, -1): c * m.coeff for e, c in self._terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # inspection
    def coefficients(self) -> list[int]:
        return list(self._terms.values())

    def min_exponent(self, var: str) -> int:
        """Smallest exponent of ``var`` across terms (0 when absent)."""
        return min((dict(e).get(var, 0) for e in self._terms), default=0)

    def denominator_vector(self) -> dict[str, int]:
        """Exponent of each variable in the reduced common denominator."""
        out = {}
        for v in sorted(self.variables()):
            k = -self.min_exponent(v)
            if k > 0:
                out[v] = k
        return out

    def evaluate(self, values: Mapping[str, float | Fraction | int]):
        total = 0
        for e, c in self._terms.items():
            t = c
            for v, k in e:
                t = t * values[v] ** k
            total = total + t
        return total

    def substitute(self, values: Mapping[str, int | Fraction]) -> "LaurentPolynomial | Fraction":
        """Partially evaluate; returns a Fraction when nothing symbolic remains."""
        acc: dict[Exponents, Fraction] = {}
        for e, c in self._terms.items():
            coef = Fraction(c)
            rest = []
            for v, k in e:
                if v in values:
                    coef *= Fraction(values[v]) ** k
                else:
                    rest.append((v, k))
            key = tuple(rest)
            acc[key] = acc.get(key, Fraction(0)) + coef
        if set(acc) <= {()}:
            return acc.get((), Fraction(0))
        if any(c.denominator != 1 for c in acc.values()):
            raise ValueError("substitution left non-integer coefficients")
        return LaurentPolynomial({e: int(c) for e, c in acc.items()})

    def text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self._terms.items()):
            parts.append(_term_text(e, c, first=(i == 0)))
        return "".join(parts)

    def to_json(self) -> list:
        return [{"coeff": c, "exponents": dict(e)} for e, c in self._terms.items()]

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.text()})"

    __str__ = text


def add(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    return a + b


def mul(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    return a * b


def div_by_monomial(a: LaurentPolynomial, m) -> LaurentPolynomial:
    return a.div_by_monomial(m)


def eq(a: LaurentPolynomial, b: LaurentPolynomial) -> bool:
    return a == b


@dataclass
class TruncatedSeries:
    """Partial sum of a cluster-variable expansion.

    ``terms`` keeps one (monomial, height) pair per matching, in enumeration
    order, so refinement in the height bound can be checked term by term.
    """
    partial_sum: LaurentPolynomial
    height_bound: int
    term_count: int
    terms: list = field(default_factory=list)
    exact: bool = False
    window: int = 0

    def text(self) -> str:
        return self.partial_sum.text()


# ---------------------------------------------------------------------------
# expansion and identities

def expand(T, gamma, H: int | None = 6, window: int | None = None) -> TruncatedSeries:
    """Snake-graph expansion of the curve ``gamma`` in the fan triangulation ``T``.

    Returns the whole Laurent polynomial when the snake graph is finite;
    otherwise the sum over matchings of height at most ``H``. With
    ``H=None`` every matching that avoids window edges at ``window`` is kept.
    """
    from . import snakegraph, triangulation
    from .surface import Arc, BoundaryArc

    S = T.surface
    if isinstance(gamma, BoundaryArc) or S.is_boundary_pair(*gamma.endpoints):
        name = S.var_name(*gamma.endpoints)
        return TruncatedSeries(LaurentPolynomial.var(name), H, 1,
                               [(Monomial.of({name: 1}), 0)], exact=True)
    if not triangulation.is_fan_triangulation(T):
        raise triangulation.NotFanTriangulation("expansion needs a fan triangulation")
    if triangulation.contains_arc(T, gamma):
        name = S.var_name(*gamma.endpoints)
        return TruncatedSeries(LaurentPolynomial.var(name), H, 1,
                               [(Monomial.of({name: 1}), 0)], exact=True)
    G = snakegraph.build(T, gamma, H=H, window=window)
    cross = snakegraph.crossing_monomial(G)
    terms = []
    for P in snakegraph.matchings(G, H):
        m = snakegraph.weight_monomial(G, P) / cross
        terms.append((m, sum(P.heights)))
    poly = LaurentPolynomial.from_monomials(m for m, _ in terms)
    return TruncatedSeries(poly, H, len(terms), terms, exact=G.is_finite, window=G.window)


def incoming_fan_closed_form(labels: Callable[[int], tuple[str, str, str]] | "FanLabels",
                             s: int, H: int) -> TruncatedSeries:
    """Partial sum x_s * x_star * sum_{i=s}^{H} x_{i,i+1} / (x_i x_{i+1}).

    ``labels`` maps an index i to variable names; see :class:`FanLabels`.
    """
    if H < s:
        raise ValueError("need H >= s")
    lab = labels if isinstance(labels, FanLabels) else FanLabels(labels)
    pref = Monomial.of({lab.spoke(s): 1}) * Monomial.of({lab.star: 1})
    terms = []
    for i in range(s, H + 1):
        m = pref * Monomial.of({lab.side(i): 1})
        m = m / Monomial.of({lab.spoke(i): 1}) / Monomial.of({lab.spoke(i + 1): 1})
        terms.append((m, i - s))
    poly = LaurentPolynomial.from_monomials(m for m, _ in terms)
    return TruncatedSeries(poly, H, len(terms), terms)


@dataclass(frozen=True)
class FanLabels:
    """Variable names of an incoming fan: spokes x_i, sides x_{i,i+1}, limit x_star."""
    spoke_fn: Callable[[int], str]
    side_fn: Callable[[int], str]
    star: str

    def spoke(self, i: int) -> str:
        return self.spoke_fn(i)

    def side(self, i: int) -> str:
        return self.side_fn(i)


def fan_labels(T, fan_index: int = 0) -> FanLabels:
    """Labels for an incoming fan of ``T`` in terms of its accumulating segment."""
    from .surface import Pt
    S = T.surface
    fan = T.domains[fan_index]
    seg = fan.seg
    src = fan.source

    def spoke(i: int) -> str:
        return S.var_name(src, Pt(seg, i))

    def side(i: int) -> str:
        return S.var_name(Pt(seg, i), Pt(seg, i + 1))

    return FanLabels(spoke, side, S.var_name(src, S.acc_point(seg)))


@lru_cache(maxsize=1 << 16)
def _series_value(T, curve, window):
    # every window-free term at a shared window; no per-curve height cut
    return expand(T, curve, None, window=window).partial_sum


def _common_window(T, curves, H) -> int:
    from . import snakegraph
    return max(snakegraph.required_window(T, c, H) for c in curves)


def ptolemy_check(T, quad, H: int = 6) -> bool:
    """Check x_pr x_qs = x_pq x_rs + x_qr x_ps for 4 cyclically ordered points."""
    S = T.surface
    p, q, r, s = quad
    pts = [p, q, r, s]
    if len(set(pts)) != 4:
        raise DegenerateQuad("quadrilateral needs four distinct points")
    keys = [S.key(x) for x in pts]
    start = keys.index(min(keys))
    rot = keys[start:] + keys[:start]
    if rot != sorted(rot):
        raise DegenerateQuad("points are not in cyclic order")
    curves = [S.curve(p, r), S.curve(q, s), S.curve(p, q), S.curve(r, s),
              S.curve(q, r), S.curve(p, s)]
    w = _common_window(T, curves, H)
    x = [_series_value(T, c, w) for c in curves]
    return x[0] * x[1] == x[2] * x[3] + x[4] * x[5]


def skein_check(T, g1, g2, H: int = 6) -> bool:
    """Check x1 x2 = x3 x4 + x5 x6 for the two smoothings of a crossing."""
    from .surface import smooth_crossing
    S = T.surface
    (a, b), (c, d) = smooth_crossing(S, g1, g2)
    curves = [g1, g2, a, b, c, d]
    w = _common_window(T, curves, H)
    x = [_series_value(T, cv, w) for cv in curves]
    return x[0] * x[1] == x[2] * x[3] + x[4] * x[5]
