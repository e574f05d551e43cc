"""Triangulations of infinity-gons stored as finite domain decompositions.

A triangulation is a finite list of separating arcs plus finitely many
infinite families (fans and zig-zags) attached to accumulating segments.
Every question about it is answered on a finite window: points beyond
index N of an accumulating segment are contracted onto the accumulation
point, which turns the triangulation into one of a finite polygon.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Union

from .surface import (Acc, Accumulating, Arc, Finite, MarkedPoint, Pt, Side, Surface,
                      cross, make_polygon, parse_point)

BIG = 10 ** 6  # index used to probe the eventual behaviour of a family


class CrossingPair(ValueError):
    pass


class NotMaximal(ValueError):
    pass


class BadLimitArc(ValueError):
    pass


class ZigZagDomainPresent(ValueError):
    pass


class NotFanTriangulation(ValueError):
    pass


class DomainType(str, Enum):
    IN = "In"
    OUT = "Out"
    ZIG = "Zig"


# ---------------------------------------------------------------------------
# domain descriptors

@dataclass(frozen=True)
class FinitePoly:
    arcs: tuple


@dataclass(frozen=True)
class IncomingFan:
    """Arcs (source, p_i) for i >= start, p_i on accumulating segment ``seg``."""
    source: MarkedPoint
    seg: int
    start: int


@dataclass(frozen=True)
class OutgoingFan:
    """Arcs (a, p_i) for i >= start where a is the target of segment ``seg``."""
    seg: int
    start: int


@dataclass(frozen=True)
class _ZigZag:
    """Alternating arcs between a LEFT segment and a RIGHT segment.

    parity 0: (L_i, R_i), (L_i, R_{i+1});  parity 1: (L_i, R_i), (L_{i+1}, R_i).
    """
    left: int
    right: int
    start: int
    parity: int = 0


@dataclass(frozen=True)
class ZigZagAroundAcc(_ZigZag):
    pass


@dataclass(frozen=True)
class ZigZagToLimit(_ZigZag):
    pass


Domain = Union[FinitePoly, IncomingFan, OutgoingFan, ZigZagAroundAcc, ZigZagToLimit]
INFINITE = (IncomingFan, OutgoingFan, ZigZagAroundAcc, ZigZagToLimit)


def members(S: Surface, d: Domain, upto: int, start: int | None = None) -> Iterator[tuple[int, tuple]]:
    """(level, (p, q)) for every arc of ``d`` with level in [start, upto]."""
    if isinstance(d, FinitePoly):
        for a in d.arcs:
            yield 0, a.endpoints
        return
    lo = d.start if start is None else start
    for i in range(lo, upto + 1):
        if isinstance(d, IncomingFan):
            yield i, (d.source, Pt(d.seg, i))
        elif isinstance(d, OutgoingFan):
            yield i, (S.acc_point(d.seg), Pt(d.seg, i))
        else:
            L, R = d.left, d.right
            yield i, (Pt(L, i), Pt(R, i))
            if d.parity == 0:
                yield i, (Pt(L, i), Pt(R, i + 1))
            else:
                yield i, (Pt(L, i + 1), Pt(R, i))


def limit_arc_of(S: Surface, d: Domain) -> Arc | None:
    if isinstance(d, IncomingFan):
        return Arc.of(d.source, S.acc_point(d.seg))
    if isinstance(d, ZigZagToLimit):
        return Arc.of(S.acc_point(d.left), S.acc_point(d.right))
    return None


def accumulations_of(S: Surface, d: Domain) -> list[tuple[str, Side]]:
    if isinstance(d, (IncomingFan, OutgoingFan)):
        s = S.boundary[d.seg]
        return [(s.target, s.side)]
    if isinstance(d, _ZigZag):
        return [(S.boundary[d.left].target, Side.LEFT), (S.boundary[d.right].target, Side.RIGHT)]
    return []


def domain_type(d: Domain) -> DomainType:
    if isinstance(d, IncomingFan):
        return DomainType.IN
    if isinstance(d, OutgoingFan):
        return DomainType.OUT
    if isinstance(d, _ZigZag):
        return DomainType.ZIG
    raise ValueError("finite domains have no type")


def is_member(S: Surface, d: Domain, arc: Arc) -> int | None:
    """Level of ``arc`` inside ``d`` or None."""
    if isinstance(d, FinitePoly):
        return 0 if arc in d.arcs else None
    pts = arc.endpoints
    if isinstance(d, (IncomingFan, OutgoingFan)):
        hub = d.source if isinstance(d, IncomingFan) else S.acc_point(d.seg)
        if hub not in pts:
            return None
        other = pts[1] if pts[0] == hub else pts[0]
        if isinstance(other, Pt) and other.seg == d.seg and other.index >= d.start:
            return other.index
        return None
    a, b = pts
    for l, r in ((a, b), (b, a)):
        if isinstance(l, Pt) and isinstance(r, Pt) and l.seg == d.left and r.seg == d.right:
            i, j = l.index, r.index
            if d.parity == 0:
                if j == i and i >= d.start:
                    return i
                if j == i + 1 and i >= d.start:
                    return i
            else:
                if j == i and i >= d.start:
                    return i
                if i == j + 1 and j >= d.start:
                    return j
    return None


def _domain_depth(S: Surface, d: Domain) -> int:
    if isinstance(d, FinitePoly):
        return max((S.point_depth(p) for a in d.arcs for p in a.endpoints), default=0)
    dep = d.start + 2
    if isinstance(d, IncomingFan):
        dep = max(dep, S.point_depth(d.source))
    return dep


# ---------------------------------------------------------------------------
# the window polygon

class Window:
    """The finite polygon obtained by truncating ``S`` at depth N."""

    def __init__(self, S: Surface, N: int):
        self.S = S
        self.N = N
        self.points = S.window(N)
        self.pos = {p: i for i, p in enumerate(self.points)}
        self.m = len(self.points)

    def contract(self, p: MarkedPoint) -> MarkedPoint:
        return self.S.contract(p, self.N)

    def is_edge(self, p: MarkedPoint, q: MarkedPoint) -> bool:
        d = (self.pos[p] - self.pos[q]) % self.m
        return d in (1, self.m - 1)

    def is_window_edge(self, p: MarkedPoint, q: MarkedPoint) -> bool:
        return self.is_edge(p, q) and not self.S.is_boundary_pair(p, q)

    def var(self, p: MarkedPoint, q: MarkedPoint) -> str:
        if self.is_window_edge(p, q):
            a, b = self.S.ordered(p, q)
            return f"w({a},{b})"
        return self.S.var_name(p, q)

    def crosses(self, a: tuple, b: tuple) -> bool:
        if set(a) & set(b):
            return False
        i, j = sorted(self.pos[x] for x in a)
        ins = [i < self.pos[x] < j for x in b]
        return ins[0] != ins[1]

    def between(self, p: MarkedPoint, q: MarkedPoint) -> list[MarkedPoint]:
        """Points strictly after p and before q in cyclic order."""
        i, j = self.pos[p], self.pos[q]
        out = []
        k = (i + 1) % self.m
        while k != j:
            out.append(self.points[k])
            k = (k + 1) % self.m
        return out


def _pair(p, q) -> frozenset:
    return frozenset((p, q))


@dataclass(frozen=True)
class Triangulation:
    surface: Surface
    separators: tuple = ()
    domains: tuple = ()
    limit_arcs: tuple = ()

    @classmethod
    def build(cls, surface: Surface, separators: Iterable[Arc] = (),
              domains: Iterable[Domain] = ()) -> "Triangulation":
        """Construct and complete by the limit arcs of the infinite domains."""
        doms = tuple(domains)
        lims = []
        for d in doms:
            la = limit_arc_of(surface, d)
            if la is not None and la not in lims:
                lims.append(la)
        seps = tuple(a for a in dict.fromkeys(separators) if a not in lims)
        return cls(surface, seps, doms, tuple(lims))

    @cached_property
    def depth(self) -> int:
        S = self.surface
        dep = max((S.point_depth(p) for a in self.separators + self.limit_arcs
                   for p in a.endpoints), default=0)
        for d in self.domains:
            dep = max(dep, _domain_depth(S, d))
        return dep

    def finite_arcs(self) -> list[Arc]:
        out = list(self.separators)
        for d in self.domains:
            if isinstance(d, FinitePoly):
                out.extend(d.arcs)
        return out

    def infinite_domains(self) -> list[tuple[int, Domain]]:
        return [(k, d) for k, d in enumerate(self.domains) if isinstance(d, INFINITE)]

    # -- json
    def to_json(self) -> dict:
        def arc(a):
            return [str(a.u), str(a.v)]
        doms = []
        for d in self.domains:
            if isinstance(d, FinitePoly):
                doms.append({"type": "finite", "arcs": [arc(a) for a in d.arcs]})
            elif isinstance(d, IncomingFan):
                doms.append({"type": "incoming", "source": str(d.source), "seg": d.seg,
                             "start": d.start})
            elif isinstance(d, OutgoingFan):
                doms.append({"type": "outgoing", "seg": d.seg, "start": d.start})
            else:
                doms.append({"type": "zigzag", "left": d.left, "right": d.right,
                             "start": d.start, "parity": d.parity})
        return {"surface": self.surface.to_json(),
                "separators": [arc(a) for a in self.separators],
                "domains": doms,
                "limit_arcs": [arc(a) for a in self.limit_arcs]}

    @classmethod
    def from_json(cls, data: dict | str, surface: Surface | None = None) -> "Triangulation":
        if isinstance(data, str):
            data = json.loads(data)
        S = surface or Surface.from_json(data["surface"])

        def arc(x):
            return Arc.of(parse_point(x[0]), parse_point(x[1]))
        doms: list[Domain] = []
        for d in data.get("domains", []):
            t = d["type"]
            if t == "finite":
                doms.append(FinitePoly(tuple(arc(a) for a in d["arcs"])))
            elif t == "incoming":
                doms.append(IncomingFan(parse_point(d["source"]), int(d["seg"]), int(d["start"])))
            elif t == "outgoing":
                doms.append(OutgoingFan(int(d["seg"]), int(d["start"])))
            elif t == "zigzag":
                L, R = int(d["left"]), int(d["right"])
                kind = ZigZagAroundAcc if S.boundary[L].target == S.boundary[R].target \
                    else ZigZagToLimit
                doms.append(kind(L, R, int(d["start"]), int(d.get("parity", 0))))
            else:
                raise ValueError(f"unknown domain type {t!r}")
        seps = [arc(a) for a in data.get("separators", [])]
        if "limit_arcs" in data:
            lims = tuple(arc(a) for a in data["limit_arcs"])
            return cls(S, tuple(a for a in seps if a not in lims), tuple(doms), lims)
        return cls.build(S, seps, doms)


# ---------------------------------------------------------------------------
# realised arcs

def window_arcs(T: Triangulation, N: int) -> dict[frozenset, tuple]:
    """Arcs of T on the window polygon, each tagged with its owner.

    Owners: ('sep', arc), ('lim', arc), ('dom', k, level).
    """
    W = Window(T.surface, N)
    out: dict[frozenset, tuple] = {}

    def put(p, q, owner, override=False):
        p, q = W.contract(p), W.contract(q)
        if p == q or W.is_edge(p, q):
            return
        key = _pair(p, q)
        if override or key not in out:
            out[key] = owner
    for a in T.separators:
        put(*a.endpoints, ("sep", a))
    for k, d in enumerate(T.domains):
        if isinstance(d, FinitePoly):
            for a in d.arcs:
                put(*a.endpoints, ("sep", a))
            continue
        for lvl, (p, q) in members(T.surface, d, N + 1):
            put(p, q, ("dom", k, lvl))
    for a in T.limit_arcs:
        put(*a.endpoints, ("lim", a), override=True)
    return out


def window_size(T: Triangulation, *extra: Arc, margin: int = 4) -> int:
    S = T.surface
    dep = T.depth
    for a in extra:
        for p in a.endpoints:
            dep = max(dep, S.point_depth(p))
    return dep + margin


def contains_arc(T: Triangulation, a: Arc) -> bool:
    S = T.surface
    if a in T.limit_arcs or a in T.separators:
        return True
    return any(is_member(S, d, a) is not None for d in T.domains)


def owner_of(T: Triangulation, a: Arc):
    if a in T.limit_arcs:
        return ("lim", a)
    if a in T.separators:
        return ("sep", a)
    for k, d in enumerate(T.domains):
        lvl = is_member(T.surface, d, a)
        if lvl is not None:
            return ("sep", a) if isinstance(d, FinitePoly) else ("dom", k, lvl)
    return None


@dataclass
class ValidationReport:
    errors: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def __bool__(self) -> bool:
        return self.ok


def _derived_limits(T: Triangulation) -> list[Arc]:
    out = []
    for d in T.domains:
        la = limit_arc_of(T.surface, d)
        if la is not None and la not in out:
            out.append(la)
    return out


def validate(T: Triangulation, N: int) -> ValidationReport:
    """Pairwise compatibility, maximality and limit-arc completion at window N."""
    if N < 1:
        raise ValueError("N must be positive")
    rep = ValidationReport()
    S = T.surface
    derived = _derived_limits(T)
    for a in derived:
        if a not in T.limit_arcs:
            rep.errors.append(BadLimitArc(f"missing limit arc {a}"))
    for a in T.limit_arcs:
        if a not in derived:
            rep.errors.append(BadLimitArc(f"{a} is not a limit of any family"))
    # one domain per one-sided accumulation
    seen: dict = {}
    for d in T.domains:
        for acc in accumulations_of(S, d):
            if acc in seen:
                rep.errors.append(NotMaximal(f"two domains claim {acc[0]}({acc[1].value})"))
            seen[acc] = d
    for (a, side, _) in S.one_sided():
        if (a, side) not in seen:
            rep.errors.append(NotMaximal(f"nothing accumulates at {a}({side.value})"))
    W = Window(S, N)
    arcs = list(window_arcs(T, N))
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            if W.crosses(tuple(arcs[i]), tuple(arcs[j])):
                rep.errors.append(CrossingPair(f"{_fmt(arcs[i])} x {_fmt(arcs[j])}"))
    if W.m >= 3 and len(arcs) != W.m - 3 and not any(isinstance(e, CrossingPair) for e in rep.errors):
        witness = _missing_arc(W, arcs)
        rep.errors.append(NotMaximal(
            f"{len(arcs)} arcs on a {W.m}-gon; e.g. {witness} can be added"))
    return rep


def _fmt(pair) -> str:
    return ",".join(sorted(str(x) for x in pair))


def _missing_arc(W: Window, arcs) -> str:
    have = set(arcs)
    pts = W.points
    for i in range(W.m):
        for j in range(i + 2, W.m):
            p, q = pts[i], pts[j]
            if W.is_edge(p, q) or _pair(p, q) in have:
                continue
            if not any(W.crosses((p, q), tuple(a)) for a in arcs):
                return f"{p},{q}"
    return "?"


def limit_arcs(T: Triangulation) -> list[Arc]:
    return list(T.limit_arcs)


def is_fan_triangulation(T: Triangulation) -> bool:
    return not any(isinstance(d, _ZigZag) for d in T.domains)


def domain_at(T: Triangulation, acc: str, side: Side) -> Domain:
    for d in T.domains:
        if (acc, side) in accumulations_of(T.surface, d):
            return d
    raise KeyError((acc, side))


def type_at(T: Triangulation, acc: str, side: Side | str) -> DomainType:
    return domain_type(domain_at(T, acc, Side(side)))


# ---------------------------------------------------------------------------
# crossing sequences

def crossing_sequence(T: Triangulation, gamma: Arc, N: int,
                      start: MarkedPoint | None = None) -> list[tuple[frozenset, tuple]]:
    """Window arcs of T crossed by gamma, ordered from ``start`` (default gamma.u)."""
    W = Window(T.surface, N)
    u, v = gamma.endpoints
    if start is not None and start == v:
        u, v = v, u
    side1 = {p: i for i, p in enumerate(W.between(u, v))}
    side2 = {p: i for i, p in enumerate(W.between(v, u))}
    found = []
    for key, owner in window_arcs(T, N).items():
        x, y = tuple(key)
        if x in side2 and y in side1:
            x, y = y, x
        if x in side1 and y in side2:
            found.append(((side1[x], -side2[y]), key, owner))
    found.sort(key=lambda t: t[0])
    return [(k, o) for _, k, o in found]


@dataclass
class Run:
    owner: tuple          # ('sep', arc) | ('lim', arc) | ('dom', k)
    arcs: list            # window pairs in crossing order
    infinite: bool = False
    limit_crossing: bool = False


@dataclass
class DomainOfArc:
    runs: list

    @property
    def empty(self) -> bool:
        return not self.runs


def _run_key(owner: tuple) -> tuple:
    return owner[:2]


def group_runs(seq) -> list[Run]:
    runs: list[Run] = []
    for key, owner in seq:
        k = _run_key(owner)
        if runs and runs[-1].owner == k and owner[0] == "dom":
            runs[-1].arcs.append(key)
        else:
            runs.append(Run(k, [key], limit_crossing=(owner[0] == "lim")))
    return runs


def domain_of_arc(T: Triangulation, gamma: Arc, N: int | None = None) -> DomainOfArc:
    if not is_fan_triangulation(T):
        raise ZigZagDomainPresent("domains of arcs need a fan triangulation")
    S = T.surface
    if contains_arc(T, gamma) or S.is_boundary_pair(*gamma.endpoints):
        return DomainOfArc([])
    n1 = N or window_size(T, gamma)
    r1 = group_runs(crossing_sequence(T, gamma, n1))
    r2 = group_runs(crossing_sequence(T, gamma, 2 * n1))
    by_owner = {}
    for r in r2:
        by_owner.setdefault(r.owner, []).append(r)
    for r in r1:
        longer = by_owner.get(r.owner, [])
        if r.owner[0] == "dom" and any(len(x.arcs) > len(r.arcs) for x in longer):
            r.infinite = True
    return DomainOfArc(r1)


# ---------------------------------------------------------------------------
# crossings between triangulations

@dataclass(frozen=True)
class MoreThanCap:
    cap: int

    def __str__(self) -> str:
        return f"MoreThanCap({self.cap})"


def _count_crossings(T1: Triangulation, T2: Triangulation, N: int) -> int:
    W = Window(T1.surface, N)
    A = list(window_arcs(T1, N))
    B = list(window_arcs(T2, N))
    return sum(W.crosses(tuple(a), tuple(b)) for a in A for b in B)


def intersection_count(T: Triangulation, T2: Triangulation, cap: int = 64,
                       N: int | None = None):
    """|T cap T'| when it is finite and at most ``cap``; else MoreThanCap."""
    n1 = max(N or 0, window_size(T), window_size(T2))
    c1 = _count_crossings(T, T2, n1)
    c2 = _count_crossings(T, T2, 2 * n1)
    if c1 == c2 and c1 <= cap:
        return c1
    return MoreThanCap(cap)


def arc_crossings(T: Triangulation, gamma: Arc, N: int) -> int:
    W = Window(T.surface, N)
    g = tuple(W.contract(p) for p in gamma.endpoints)
    return sum(W.crosses(g, tuple(a)) for a in window_arcs(T, N))


@dataclass(frozen=True)
class FiniteCount:
    arcs: tuple

    def __len__(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class InfiniteWithWitness:
    witness: Arc | None
    accumulation: tuple | None = None


def _probe(S: Surface, d: Domain, level: int) -> list[Arc]:
    return [Arc.of(p, q) for _, (p, q) in members(S, d, level, start=level)]


def crosses_infinitely(S: Surface, arc: Arc, d: Domain) -> bool:
    """Does ``arc`` cross every member of ``d`` far enough out?"""
    if not isinstance(d, INFINITE):
        return False
    far = [_probe(S, d, BIG), _probe(S, d, BIG + 1)]
    return all(any(cross(S, arc, m) for m in group) for group in far)


def _t2_arcs(T2: Triangulation, upto: int) -> list[Arc]:
    S = T2.surface
    out = list(T2.finite_arcs()) + list(T2.limit_arcs)
    for _, d in T2.infinite_domains():
        for _, (p, q) in members(S, d, upto):
            a = Arc.of(p, q)
            if not S.is_boundary_pair(p, q) and a not in out:
                out.append(a)
    return [a for a in out if not S.is_boundary_pair(*a.endpoints)]


def _is_bad(T: Triangulation, a: Arc, N: int) -> bool:
    S = T.surface
    for lim in T.limit_arcs:
        if cross(S, a, lim):
            return True
    n = max(N, max(S.point_depth(p) for p in a.endpoints) + 4)
    return arc_crossings(T, a, n) < arc_crossings(T, a, 2 * n)


def bad_arcs(T: Triangulation, T2: Triangulation, cap: int = 64, N: int | None = None):
    """Arcs of T2 crossing infinitely many arcs of T."""
    S = T.surface
    n = max(N or 0, window_size(T), window_size(T2))
    lvl1 = n
    bad1 = [a for a in _t2_arcs(T2, lvl1) if _is_bad(T, a, n)]
    bad2 = [a for a in _t2_arcs(T2, 2 * lvl1) if _is_bad(T, a, 2 * n)]
    if len(bad1) == len(bad2) and len(bad1) <= cap:
        return FiniteCount(tuple(bad1))
    # locate where the bad arcs accumulate
    witness, where = None, None
    for lim in T.limit_arcs:
        for _, d in T2.infinite_domains():
            if crosses_infinitely(S, lim, d):
                witness = lim
                where = accumulations_of(S, d)[0]
                break
        if witness:
            break
    if witness is None:
        for _, d in T2.infinite_domains():
            far = _probe(S, d, lvl1)
            if any(a in bad1 for a in far):
                where = accumulations_of(S, d)[0]
                try:
                    witness = limit_arc_of(S, domain_at(T, *where))
                except KeyError:
                    witness = None
                break
    return InfiniteWithWitness(witness, where)


# ---------------------------------------------------------------------------
# stronger domains

@dataclass(frozen=True)
class DomainInfo:
    surface: Surface
    domain: Domain

    @property
    def kind(self) -> DomainType:
        return domain_type(self.domain)

    @property
    def limit(self) -> Arc | None:
        return limit_arc_of(self.surface, self.domain)


def stronger(d: DomainInfo, d2: DomainInfo) -> bool:
    """Whether d dominates d2 at a shared one-sided accumulation."""
    if d.kind is DomainType.OUT:
        return False
    if d2.kind is DomainType.OUT:
        return True
    lim = d.limit
    if lim is None:
        return False
    return crosses_infinitely(d.surface, lim, d2.domain)


def domain_info(T: Triangulation, acc: str, side: Side) -> DomainInfo:
    return DomainInfo(T.surface, domain_at(T, acc, side))


# ---------------------------------------------------------------------------
# standard examples

def polygon_triangulation(n: int, diagonals: Iterable[tuple[int, int]]) -> Triangulation:
    S = make_polygon(n)
    return Triangulation.build(S, [Arc.of(Pt(0, i), Pt(0, j)) for i, j in diagonals])


def polygon_fan(n: int, v: int = 0) -> Triangulation:
    return polygon_triangulation(n, [(v, (v + k) % n) for k in range(2, n - 1)])


@lru_cache(maxsize=None)
def _triangulations(lo: int, hi: int) -> tuple:
    if hi - lo < 2:
        return ((),)
    out = []
    for k in range(lo + 1, hi):
        for left in _triangulations(lo, k):
            for right in _triangulations(k, hi):
                extra = []
                if k - lo > 1:
                    extra.append((lo, k))
                if hi - k > 1:
                    extra.append((k, hi))
                out.append(tuple(left) + tuple(right) + tuple(extra))
    return tuple(out)


def polygon_triangulations(n: int) -> list[Triangulation]:
    """Every triangulation of the n-gon (Catalan many)."""
    return [polygon_triangulation(n, diags) for diags in _triangulations(0, n - 1)]


def i1_incoming_fan(k: int = 0, poly: Iterable[tuple[int, int]] = ()) -> Triangulation:
    """Incoming fan at p_k on the one-sided infinity-gon.

    ``poly`` triangulates the finite polygon p_0..p_k, a (indices; -1 is a).
    """
    S = Surface((Accumulating("a", Side.LEFT),))
    seps = [Arc.of(_pt(i), _pt(j)) for i, j in poly]
    return Triangulation.build(S, seps, [IncomingFan(Pt(0, k), 0, k + 2)])


def i1_outgoing_fan(start: int = 1, poly: Iterable[tuple[int, int]] = ()) -> Triangulation:
    """Outgoing fan (a, p_i), i >= start, plus a triangulation of p_0..p_{start-1}, a."""
    S = Surface((Accumulating("a", Side.LEFT),))
    seps = [Arc.of(_pt(i), _pt(j)) for i, j in poly]
    return Triangulation.build(S, seps, [OutgoingFan(0, start)])


def _pt(i: int) -> MarkedPoint:
    return Acc("a") if i < 0 else Pt(0, i)


def i2_zigzag(start: int = 0, parity: int = 0) -> Triangulation:
    S = Surface((Accumulating("a", Side.LEFT), Accumulating("a", Side.RIGHT)))
    return Triangulation.build(S, [], [ZigZagAroundAcc(0, 1, start, parity)])


def octagon_pair() -> tuple[Triangulation, Triangulation]:
    """Two triangulations with exactly three bad arcs, two of them limit arcs.

    Boundary: A <- p^A | B -> q^B | m1 | p^C -> C | D -> q^D | m2, so that the
    pairs (A, B) and (C, D) are boundary arcs. T has zig-zags with limit arcs
    on those boundary arcs; T' has zig-zags converging to (B, C) and (D, A)
    and the diagonal (A, C).
    """
    S = Surface((Accumulating("A", Side.LEFT), Accumulating("B", Side.RIGHT), Finite(1),
                 Accumulating("C", Side.LEFT), Accumulating("D", Side.RIGHT), Finite(1)))
    a0, b0, m1, c0, d0, m2 = Pt(0, 0), Pt(1, 0), Pt(2, 0), Pt(3, 0), Pt(4, 0), Pt(5, 0)
    T = Triangulation.build(
        S, [Arc.of(a0, m1), Arc.of(m1, d0), Arc.of(d0, a0)],
        [ZigZagToLimit(0, 1, 0), ZigZagToLimit(3, 4, 0)])
    A, B, C, D = Acc("A"), Acc("B"), Acc("C"), Acc("D")
    # T': zig-zag q^B/p^C towards (B, C) and q^D/p^A towards (D, A), plus (A, C)
    T2 = Triangulation.build(
        S, [Arc.of(A, C), Arc.of(b0, c0), Arc.of(d0, a0)],
        [_ZigRL(1, 3), _ZigRL(4, 0)])
    return T, T2


def _ZigRL(right_seg: int, left_seg: int):
    """Zig-zag between a RIGHT segment and the following LEFT segment.

    Stored with the generic descriptor by swapping roles: its arcs join
    points of ``left_seg`` (towards its target) and ``right_seg``.
    """
    return ZigZagToLimit(left_seg, right_seg, 0)
