"""Upper half-plane numerics: horocycles, lambda lengths, fan realizations.

This is the floating-point oracle for the symbolic layer. Distances use
sinh(d/2) = |z1 - z2| / (2 sqrt(Im z1 Im z2)), which is the usual
cosh d = 1 + |z1 - z2|^2 / (2 Im z1 Im z2) rewritten so that nearly
tangent horocycles keep full precision.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Hashable, Sequence


class CoincidentBases(ValueError):
    pass


class IncompatibleData(ValueError):
    def __init__(self, report: "CompatibilityReport"):
        super().__init__("; ".join(report.failures))
        self.report = report


class UnplacedEndpoint(KeyError):
    pass


@dataclass(frozen=True)
class IdealPoint:
    x: float = 0.0
    infinite: bool = False

    def __str__(self) -> str:
        return "inf" if self.infinite else repr(self.x)


INFINITY = IdealPoint(0.0, True)


def real(x: float) -> IdealPoint:
    return IdealPoint(float(x))


@dataclass(frozen=True)
class Horocycle:
    """Diameter at a finite base, height of the horizontal line at infinity."""
    base: IdealPoint
    size: float

    def __post_init__(self):
        if not self.size > 0:
            raise ValueError("horocycle size must be positive")


def hyperbolic_distance(z1: complex, z2: complex) -> float:
    s = abs(z1 - z2) / (2.0 * math.sqrt(z1.imag * z2.imag))
    return 2.0 * math.asinh(s)


def _foot(h: Horocycle, other: IdealPoint) -> complex:
    """Point where the geodesic towards ``other`` leaves the horoball of h."""
    x, D = h.base.x, h.size
    if other.infinite:
        return complex(x, D)
    y = other.x
    k = (y - x) ** 2 / D ** 2
    du = (y - x) / (1.0 + k)
    return complex(x + du, du * (y - x) / D)


def lambda_length(h1: Horocycle, h2: Horocycle) -> float:
    """exp(l/2) for the signed distance l between two horocycles."""
    a, b = h1.base, h2.base
    if a == b:
        raise CoincidentBases(str(a))
    if a.infinite or b.infinite:
        fin, inf = (h2, h1) if a.infinite else (h1, h2)
        return math.sqrt(inf.size / fin.size)
    z1, z2 = _foot(h1, b), _foot(h2, a)
    d = hyperbolic_distance(z1, z2)
    # moving from a to b the real part is monotone; overlap reverses the feet
    ahead = (z2.real - z1.real) * (b.x - a.x)
    l = d if ahead >= 0 else -d
    return math.exp(l / 2.0)


def lambda_closed_form(h1: Horocycle, h2: Horocycle) -> float:
    """|x - y| / sqrt(D1 D2) (finite bases); sqrt(h / D) with one base at infinity."""
    a, b = h1.base, h2.base
    if a.infinite or b.infinite:
        fin, inf = (h2, h1) if a.infinite else (h1, h2)
        return math.sqrt(inf.size / fin.size)
    return abs(a.x - b.x) / math.sqrt(h1.size * h2.size)


# ---------------------------------------------------------------------------
# Moebius maps

@dataclass(frozen=True)
class Moebius:
    """z -> (a z + b) / (c z + d) with ad - bc = 1."""
    a: float
    b: float
    c: float
    d: float

    @classmethod
    def random(cls, rng: random.Random) -> "Moebius":
        a, b, c = (rng.uniform(-2, 2) for _ in range(3))
        while abs(a) < 0.2:
            a = rng.uniform(-2, 2)
        return cls(a, b, c, (1.0 + b * c) / a)

    def point(self, p: IdealPoint) -> IdealPoint:
        if p.infinite:
            return INFINITY if self.c == 0 else real(self.a / self.c)
        den = self.c * p.x + self.d
        if den == 0:
            return INFINITY
        return real((self.a * p.x + self.b) / den)

    def horocycle(self, h: Horocycle) -> Horocycle:
        p = h.base
        if p.infinite:
            if self.c == 0:
                return Horocycle(INFINITY, h.size * self.a ** 2)
            return Horocycle(self.point(p), 1.0 / (self.c ** 2 * h.size))
        den = self.c * p.x + self.d
        if den == 0:
            return Horocycle(INFINITY, 1.0 / (self.c ** 2 * h.size))
        return Horocycle(self.point(p), h.size / den ** 2)


# ---------------------------------------------------------------------------
# realizations

@dataclass
class DecoratedRealization:
    placement: dict
    decoration: dict
    truncation: int = 0
    height: float = 1.0

    def transformed(self, g: Moebius) -> "DecoratedRealization":
        return DecoratedRealization({k: g.point(p) for k, p in self.placement.items()},
                                    {k: g.horocycle(h) for k, h in self.decoration.items()},
                                    self.truncation, self.height)

    def to_json(self) -> dict:
        def enc(h: Horocycle):
            return {"base": None if h.base.infinite else h.base.x, "size": h.size}
        return {"truncation": self.truncation,
                "points": {str(k): enc(h) for k, h in self.decoration.items()}}


def measure_lambda(r: DecoratedRealization, p: Hashable, q: Hashable) -> float:
    for k in (p, q):
        if k not in r.decoration:
            raise UnplacedEndpoint(k)
    return lambda_length(r.decoration[p], r.decoration[q])


def realize_triangle(x1: float, x2: float, x3: float) -> DecoratedRealization:
    """Decorate 0, 1, inf so that lambda(0,inf)=x1, lambda(1,inf)=x2, lambda(0,1)=x3."""
    if min(x1, x2, x3) <= 0:
        raise ValueError("lambda lengths must be positive")
    h = x1 * x2 / x3
    dec = {0: Horocycle(real(0.0), h / x1 ** 2), 1: Horocycle(real(1.0), h / x2 ** 2),
           "inf": Horocycle(INFINITY, h)}
    return DecoratedRealization({k: v.base for k, v in dec.items()}, dec, 0, h)


class FanKind(str, Enum):
    INCOMING = "incoming"
    OUTGOING = "outgoing"


@dataclass
class FanData:
    """x_i = spoke[i-1], x_{i,i+1} = side[i-1] for i = 1, 2, ...; star for incoming."""
    spoke: list
    side: list
    star: float | None = None

    def x(self, i: int) -> float:
        return self.spoke[i - 1]

    def s(self, i: int) -> float:
        return self.side[i - 1]

    @classmethod
    def from_functions(cls, spoke: Callable[[int], float], side: Callable[[int], float],
                       n: int, star: float | None = None) -> "FanData":
        return cls([spoke(i) for i in range(1, n + 2)], [side(i) for i in range(1, n + 2)],
                   star)

    def __add__(self, other: "FanData") -> "FanData":
        star = None if self.star is None or other.star is None else self.star + other.star
        return FanData([a + b for a, b in zip(self.spoke, other.spoke)],
                       [a + b for a, b in zip(self.side, other.side)], star)

    def scaled(self, t: float) -> "FanData":
        return FanData([t * a for a in self.spoke], [t * a for a in self.side],
                       None if self.star is None else t * self.star)

    def to_json(self) -> dict:
        return {"spoke": self.spoke, "side": self.side, "star": self.star}

    @classmethod
    def from_json(cls, d: dict) -> "FanData":
        return cls([float(v) for v in d["spoke"]], [float(v) for v in d["side"]],
                   None if d.get("star") is None else float(d["star"]))


def geometric_incoming(star: float = 1.0, c: float = 0.5, rho: float = 0.5,
                       s0: float = 1.0, n: int = 64) -> FanData:
    """x_i = star (1 + c rho^i), x_{i,i+1} = s0 rho^i."""
    return FanData.from_functions(lambda i: star * (1 + c * rho ** i),
                                  lambda i: s0 * rho ** i, n, star)


def harmonic_outgoing(n: int = 64) -> FanData:
    """x_i = 1/i, x_{i,i+1} = 1/(i(i+1))."""
    return FanData.from_functions(lambda i: 1.0 / i, lambda i: 1.0 / (i * (i + 1)), n)


def random_incoming(rng: random.Random, n: int = 64) -> FanData:
    # rho >= 0.7 keeps p_40 - p_39 far above double-precision spacing
    return geometric_incoming(star=rng.uniform(0.5, 2.0), c=rng.uniform(-0.4, 0.8),
                              rho=rng.uniform(0.7, 0.85), s0=rng.uniform(0.2, 3.0), n=n)


@dataclass
class CompatibilityReport:
    failures: list = field(default_factory=list)
    measured: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok


def _tends_to_zero(r: Sequence[float], N: int, tol: float) -> bool:
    """Residual r_1..r_N: tiny on [3N/4, N], or its upper envelope shrinks there.

    The envelope (rather than r itself) is compared so that a residual which
    changes sign, e.g. a sum of two geometric tails, is not mistaken for noise.
    """
    half = max(1, N // 2)
    late = max(r[max(half, 3 * N // 4) - 1:N])
    early = max(r[half - 1:N])
    return late <= tol or late <= 0.75 * early + tol


def check_compatibility(kind: FanKind | str, data: FanData, N: int, tol: float = 1e-9,
                        attached: Sequence[tuple[float, float]] | None = None
                        ) -> CompatibilityReport:
    if N < 3:
        raise ValueError("N must be at least 3")
    kind = FanKind(kind)
    rep = CompatibilityReport()
    if min(data.spoke[:N + 1] + data.side[:N + 1]) <= 0:
        rep.failures.append("data must be positive")
        return rep
    if kind is FanKind.INCOMING:
        if data.star is None or data.star <= 0:
            rep.failures.append("incoming data needs a positive x_star")
            return rep
        r = [abs(data.x(i) - data.star) for i in range(1, N + 1)]
        rep.measured["|x_N - x_star|"] = r[-1]
        if not _tends_to_zero(r, N, tol):
            rep.failures.append(f"x_n does not approach x_star (residual {r[-1]:.3g})")
        half = max(1, N // 2)
        rho = max(data.s(i + 1) / data.s(i) for i in range(half, N))
        scale = sum(data.s(i) for i in range(1, N + 1))
        rep.measured["ratio"] = rho
        if rho >= 1:
            rep.failures.append(f"sum x_(i,i+1) diverges (ratio {rho:.3g})")
        else:
            tail = data.s(N) * rho / (1 - rho)
            rep.measured["tail"] = tail
            if tail > tol * max(scale, 1.0) and not _tends_to_zero(
                    [data.s(i) for i in range(1, N + 1)], N, tol):
                rep.failures.append(f"tail of sum x_(i,i+1) too large ({tail:.3g})")
    else:
        xs = [data.x(i) for i in range(1, N + 1)]
        rep.measured["x_N"] = xs[-1]
        if not _tends_to_zero(xs, N, tol):
            rep.failures.append(f"x_n does not tend to 0 (x_N = {xs[-1]:.3g})")
        acc, r = 0.0, []
        for n in range(1, N + 1):
            r.append(abs(data.x(n) * acc - 1.0) if n > 1 else 1.0)
            acc += data.s(n) / (data.x(n) * data.x(n + 1))
        rep.measured["|x_N S_N - 1|"] = r[-1]
        if not _tends_to_zero(r, N, tol):
            rep.failures.append(f"x_n * sum does not tend to 1 (residual {r[-1]:.3g})")
    if attached is not None:
        rr = []
        for n, (a, b) in enumerate(attached[:N], start=1):
            rr.append(abs((a + b) / data.s(n) - 1.0))
        if rr and not _tends_to_zero(rr, len(rr), tol):
            rep.failures.append(f"attached ratio does not tend to 1 (residual {rr[-1]:.3g})")
    return rep


def realize_fan(kind: FanKind | str, data: FanData, N: int, tol: float = 1e-9,
                check: bool = True) -> DecoratedRealization:
    """Place the fan's source at infinity and glue triangles left to right.

    Keys: "src" for the source (incoming) or the accumulation point
    (outgoing), integers i for base points p_i, and "star" for the
    accumulation point of an incoming fan (placed at p_N).
    """
    kind = FanKind(kind)
    if check:
        rep = check_compatibility(kind, data, N, tol)
        if not rep.ok:
            raise IncompatibleData(rep)
    h = 2.0 * data.star ** 2 if kind is FanKind.INCOMING else 1.0
    dec = {"src": Horocycle(INFINITY, h)}
    p = 0.0
    for i in range(1, N + 1):
        dec[i] = Horocycle(real(p), h / data.x(i) ** 2)
        p += data.s(i) * h / (data.x(i) * data.x(i + 1))
    if kind is FanKind.INCOMING:
        dec["star"] = Horocycle(real(dec[N].base.x), h / data.star ** 2)
    return DecoratedRealization({k: v.base for k, v in dec.items()}, dec, N, h)


def width(data: FanData, n: int) -> float:
    if n < 2:
        raise ValueError("n must be at least 2")
    tot = sum(data.s(i) / (data.x(i) * data.x(i + 1)) for i in range(1, n))
    return 2.0 * data.x(1) ** 2 * tot


def width_geometric(r: DecoratedRealization, n: int) -> float:
    """lambda of (p_1, p_1') where p_1' mirrors p_1 across Re z = p_n."""
    if n < 2:
        raise ValueError("n must be at least 2")
    h1 = r.decoration[1]
    mirror = Horocycle(real(2.0 * r.decoration[n].base.x - h1.base.x), h1.size)
    return lambda_length(h1, mirror)


def ptolemy_residual(r: DecoratedRealization, p, q, s, t) -> tuple[float, float]:
    """(|l_ps l_qt - l_pq l_st - l_qs l_pt|, scale) for cyclically ordered p, q, s, t."""
    m = lambda a, b: measure_lambda(r, a, b)
    lhs = m(p, s) * m(q, t)
    rhs1, rhs2 = m(p, q) * m(s, t), m(q, s) * m(p, t)
    return abs(lhs - rhs1 - rhs2), max(lhs, rhs1 + rhs2)


def cyclic_keys(r: DecoratedRealization) -> list:
    """Placed points sorted along the boundary (infinity last)."""
    fin = [k for k, p in r.placement.items() if not p.infinite]
    inf = [k for k, p in r.placement.items() if p.infinite]
    return sorted(fin, key=lambda k: (r.placement[k].x, str(k))) + inf
