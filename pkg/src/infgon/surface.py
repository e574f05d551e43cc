"""Discs with finitely many accumulation points of boundary marked points.

A surface is a cyclic list of segments. ``Finite(n)`` contributes n isolated
points. ``Accumulating(a, LEFT)`` contributes p0, p1, ... increasing towards
``a``, which sits right after the segment. ``Accumulating(a, RIGHT)`` has ``a``
right before the segment and lists its points as ..., q2, q1, q0.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from enum import Enum
from typing import Iterable, Union


class InvalidSurface(ValueError):
    pass


class NotCrossing(ValueError):
    pass


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


@dataclass(frozen=True)
class Finite:
    count: int


@dataclass(frozen=True)
class Accumulating:
    target: str
    side: Side


Segment = Union[Finite, Accumulating]


@dataclass(frozen=True, order=True)
class Pt:
    """Marked point number ``index`` of segment ``seg``."""
    seg: int
    index: int

    def __str__(self) -> str:
        return f"s{self.seg}:{self.index}"


@dataclass(frozen=True, order=True)
class Acc:
    id: str

    def __str__(self) -> str:
        return f"acc:{self.id}"


MarkedPoint = Union[Pt, Acc]


def parse_point(text: str) -> MarkedPoint:
    text = text.strip()
    if text.startswith("acc:"):
        return Acc(text[4:])
    if text.startswith("s") and ":" in text:
        a, b = text[1:].split(":", 1)
        return Pt(int(a), int(b))
    raise ValueError(f"bad marked point literal {text!r}")


def _canon(p: MarkedPoint):
    return (0, p.seg, p.index, "") if isinstance(p, Pt) else (1, 0, 0, p.id)


@dataclass(frozen=True)
class Arc:
    """Unordered pair of distinct marked points (stored in canonical order)."""
    u: MarkedPoint
    v: MarkedPoint

    @classmethod
    def of(cls, p: MarkedPoint, q: MarkedPoint) -> "Arc":
        if p == q:
            raise ValueError("arc endpoints must differ")
        a, b = sorted((p, q), key=_canon)
        return cls(a, b)

    @property
    def endpoints(self) -> tuple[MarkedPoint, MarkedPoint]:
        return (self.u, self.v)

    def __str__(self) -> str:
        return f"{self.u},{self.v}"


@dataclass(frozen=True)
class BoundaryArc(Arc):
    pass


GeneralizedArc = Union[Arc, BoundaryArc]


def parse_arc(text: str) -> Arc:
    a, b = text.split(",")
    return Arc.of(parse_point(a), parse_point(b))


@dataclass(frozen=True)
class Surface:
    boundary: tuple

    def __post_init__(self):
        segs = self.boundary
        if not segs:
            raise InvalidSurface("empty boundary")
        seen: dict[tuple[str, Side], int] = {}
        for k, s in enumerate(segs):
            if isinstance(s, Finite):
                if s.count < 1:
                    raise InvalidSurface("finite segment needs at least one point")
            elif isinstance(s, Accumulating):
                key = (s.target, s.side)
                if key in seen:
                    raise InvalidSurface(f"accumulation {s.target} used twice on side {s.side.value}")
                seen[key] = k
            else:
                raise InvalidSurface(f"unknown segment {s!r}")
        n = len(segs)
        for (t, side), k in seen.items():
            if side is Side.RIGHT and (t, Side.LEFT) in seen:
                if seen[(t, Side.LEFT)] != (k - 1) % n:
                    raise InvalidSurface(f"two-sided point {t} must sit between its segments")
        if self.acc_count == 0:
            total = sum(s.count for s in segs)
            if total < 4:
                raise InvalidSurface("a finite polygon needs at least 4 points")

    # -- basic data
    @cached_property
    def acc_count(self) -> int:
        return sum(isinstance(s, Accumulating) for s in self.boundary)

    @property
    def is_finite(self) -> bool:
        return self.acc_count == 0

    def acc_ids(self) -> list[str]:
        out: list[str] = []
        for s in self.boundary:
            if isinstance(s, Accumulating) and s.target not in out:
                out.append(s.target)
        return out

    def acc_point(self, seg: int) -> Acc:
        s = self.boundary[seg]
        if not isinstance(s, Accumulating):
            raise ValueError(f"segment {seg} is finite")
        return Acc(s.target)

    def one_sided(self) -> list[tuple[str, Side, int]]:
        """All one-sided accumulations as (id, side, segment index)."""
        return [(s.target, s.side, k) for k, s in enumerate(self.boundary)
                if isinstance(s, Accumulating)]

    def segment_of(self, acc: str, side: Side) -> int:
        for k, s in enumerate(self.boundary):
            if isinstance(s, Accumulating) and s.target == acc and s.side is side:
                return k
        raise KeyError((acc, side))

    def contains(self, p: MarkedPoint) -> bool:
        if isinstance(p, Acc):
            return p.id in self.acc_ids()
        if not 0 <= p.seg < len(self.boundary) or p.index < 0:
            return False
        s = self.boundary[p.seg]
        return not isinstance(s, Finite) or p.index < s.count

    # -- cyclic order
    def _acc_key(self, a: str):
        for k, s in enumerate(self.boundary):
            if isinstance(s, Accumulating) and s.target == a:
                if s.side is Side.LEFT:
                    return (k, 2, 0)
                return (k, 0, 0)
        raise KeyError(a)

    def key(self, p: MarkedPoint):
        """Sort key realising the cyclic boundary order (cut at segment 0)."""
        if isinstance(p, Acc):
            return self._acc_key(p.id)
        s = self.boundary[p.seg]
        if isinstance(s, Accumulating) and s.side is Side.RIGHT:
            return (p.seg, 1, -p.index)
        return (p.seg, 1, p.index)

    def _atoms(self):
        return self._atom_list

    @cached_property
    def _atom_list(self):
        """Cyclic atom list: points, and ('chain', seg, side) for infinite runs."""
        atoms: list = []
        for k, s in enumerate(self.boundary):
            if isinstance(s, Finite):
                atoms.extend(Pt(k, i) for i in range(s.count))
            elif s.side is Side.LEFT:
                atoms.append(("chain", k, Side.LEFT))
                atoms.append(Acc(s.target))
            else:
                if not (atoms and atoms[-1] == Acc(s.target)):
                    atoms.append(Acc(s.target))
                atoms.append(("chain", k, Side.RIGHT))
        if len(atoms) > 1 and isinstance(atoms[0], Acc) and atoms[0] == atoms[-1]:
            atoms.pop()
        return atoms

    @cached_property
    def _pair_cache(self) -> dict:
        return {}

    def is_boundary_pair(self, p: MarkedPoint, q: MarkedPoint) -> bool:
        """True when p and q are consecutive marked points on the boundary."""
        key = (p, q)
        hit = self._pair_cache.get(key)
        if hit is None:
            hit = self._pair_cache[key] = self._boundary_pair(p, q)
        return hit

    def _boundary_pair(self, p: MarkedPoint, q: MarkedPoint) -> bool:
        if p == q:
            return False
        for a, b in ((p, q), (q, p)):
            if isinstance(a, Pt) and isinstance(b, Pt) and a.seg == b.seg:
                s = self.boundary[a.seg]
                if isinstance(s, Accumulating):
                    if s.side is Side.LEFT and b.index == a.index + 1:
                        return True
                    if s.side is Side.RIGHT and a.index == b.index + 1:
                        return True
        atoms = self._atoms()
        n = len(atoms)
        if self.is_finite:
            if p not in self._finite_pos or q not in self._finite_pos:
                return False
            i, j = self._finite_pos[p], self._finite_pos[q]
            return (i - j) % n in (1, n - 1)
        for i in range(n):
            x, y = atoms[i], atoms[(i + 1) % n]
            end = self._atom_end(x)
            start = self._atom_start(y)
            if end is not None and start is not None and {end, start} == {p, q}:
                return True
        return False

    @cached_property
    def _finite_pos(self) -> dict:
        return {p: i for i, p in enumerate(self._atom_list)}

    @staticmethod
    def _atom_end(x):
        if isinstance(x, tuple):
            _, k, side = x
            return Pt(k, 0) if side is Side.RIGHT else None
        return x

    @staticmethod
    def _atom_start(x):
        if isinstance(x, tuple):
            _, k, side = x
            return Pt(k, 0) if side is Side.LEFT else None
        return x

    def curve(self, p: MarkedPoint, q: MarkedPoint) -> Arc:
        """Arc or BoundaryArc joining p and q, as appropriate."""
        if self.is_boundary_pair(p, q):
            a = Arc.of(p, q)
            return BoundaryArc(a.u, a.v)
        return Arc.of(p, q)

    def ordered(self, p: MarkedPoint, q: MarkedPoint) -> tuple[MarkedPoint, MarkedPoint]:
        return (p, q) if self.key(p) <= self.key(q) else (q, p)

    def var_name(self, p: MarkedPoint, q: MarkedPoint) -> str:
        """Variable of the curve pq: x(..) for arcs, b(..) for boundary arcs."""
        a, b = self.ordered(p, q)
        tag = "b" if self.is_boundary_pair(p, q) else "x"
        return f"{tag}({a},{b})"

    # -- truncation
    def window(self, N: int) -> list[MarkedPoint]:
        """First N points of every accumulating segment plus all other points."""
        if N < 1:
            raise ValueError("N must be positive")
        out: list[MarkedPoint] = []
        for atom in self._atoms():
            if isinstance(atom, tuple):
                _, k, side = atom
                idx = range(N) if side is Side.LEFT else range(N - 1, -1, -1)
                out.extend(Pt(k, i) for i in idx)
            else:
                out.append(atom)
        return out

    def contract(self, p: MarkedPoint, N: int) -> MarkedPoint:
        """Map a point beyond the window onto its accumulation point."""
        if isinstance(p, Pt):
            s = self.boundary[p.seg]
            if isinstance(s, Accumulating) and p.index >= N:
                return Acc(s.target)
        return p

    def point_depth(self, p: MarkedPoint) -> int:
        if isinstance(p, Pt) and isinstance(self.boundary[p.seg], Accumulating):
            return p.index + 1
        return 0

    # -- serialisation
    def to_json(self) -> dict:
        segs = []
        for s in self.boundary:
            if isinstance(s, Finite):
                segs.append({"finite": s.count})
            else:
                segs.append({"acc": {"id": s.target, "side": s.side.value}})
        return {"boundary": segs}

    @classmethod
    def from_json(cls, data: dict | str) -> "Surface":
        if isinstance(data, str):
            data = json.loads(data)
        segs: list[Segment] = []
        for item in data["boundary"]:
            if "finite" in item:
                segs.append(Finite(int(item["finite"])))
            else:
                a = item["acc"]
                segs.append(Accumulating(str(a["id"]), Side(a["side"])))
        return make_infinity_gon(segs) if any(isinstance(s, Accumulating) for s in segs) \
            else cls(tuple(segs))


def make_polygon(n: int) -> Surface:
    if n < 4:
        raise InvalidSurface("a polygon needs n >= 4")
    return Surface((Finite(n),))


def make_infinity_gon(spec: Iterable[Segment]) -> Surface:
    segs = tuple(spec)
    if not any(isinstance(s, Accumulating) for s in segs):
        raise InvalidSurface("an infinity-gon needs an accumulating segment")
    return Surface(segs)


def one_sided() -> Surface:
    return make_infinity_gon([Accumulating("a", Side.LEFT)])


def two_sided() -> Surface:
    return make_infinity_gon([Accumulating("a", Side.LEFT), Accumulating("a", Side.RIGHT)])


def truncate(surface: Surface, N: int) -> list[MarkedPoint]:
    return surface.window(N)


def _interleave(S: Surface, a: Arc, b: Arc) -> bool:
    pa = sorted(S.key(x) for x in a.endpoints)
    inside = [pa[0] < S.key(x) < pa[1] for x in b.endpoints]
    return inside[0] != inside[1]


def cross(surface: Surface, a: Arc, b: Arc) -> int:
    """Minimal crossing number of two chords of a disc: 0 or 1."""
    if set(a.endpoints) & set(b.endpoints):
        return 0
    return int(_interleave(surface, a, b))


def smooth_crossing(surface: Surface, a: Arc, b: Arc):
    """Both smoothings of the crossing of a and b, as two pairs of curves."""
    if not cross(surface, a, b):
        raise NotCrossing(f"{a} and {b} do not cross")
    p, r, q, s = sorted(a.endpoints + b.endpoints, key=surface.key)
    c = surface.curve
    return (c(p, r), c(q, s)), (c(p, s), c(r, q))
