"""Snake graphs of arcs with respect to fan triangulations.

An infinite snake graph is handled through its window: the arc is crossed
with the realised triangulation of the truncated polygon, one tile per
crossing. Edges of the window polygon that are not genuine boundary
segments ("window edges") only ever occur in numerators, so the matchings
avoiding them are exactly the matchings of the infinite graph whose
zig-zag heights fit inside the window.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .laurent import Monomial
from .surface import Acc, Arc, MarkedPoint, Pt, Surface
from .triangulation import (IncomingFan, NotFanTriangulation, Triangulation, Window,
                            contains_arc, crossing_sequence, is_fan_triangulation)

Vertex = tuple  # grid point (x, y)
EdgeKey = frozenset

CORNERS = ("NW", "SW", "SE", "NE")
SIDES = {"S": ("SW", "SE"), "E": ("SE", "NE"), "N": ("NW", "NE"), "W": ("NW", "SW")}
OFFSET = {"SW": (0, 0), "SE": (1, 0), "NE": (1, 1), "NW": (0, 1)}


class ArcInTriangulation(ValueError):
    pass


class NotAMatching(ValueError):
    pass


@dataclass
class Tile:
    index: int
    diagonal: str
    edges: dict              # side -> variable name
    corners: dict            # corner -> marked point (or synthetic label)
    origin: Vertex           # grid position of the SW corner
    attach: str | None       # 'R' or 'U' relative to the previous tile
    orientation: int = 1     # +1 when NW, SW, SE, NE runs with the boundary order
    owner: tuple | None = None

    def vertex(self, corner: str) -> Vertex:
        dx, dy = OFFSET[corner]
        return (self.origin[0] + dx, self.origin[1] + dy)

    def edge_key(self, side: str) -> EdgeKey:
        a, b = SIDES[side]
        return frozenset((self.vertex(a), self.vertex(b)))


@dataclass(frozen=True)
class LimitTile:
    index: int
    limit_weight: str


@dataclass
class FiniteRun:
    tiles: list


@dataclass
class ZigZagWithLimit:
    tiles: list
    limit: LimitTile
    steps: list = field(default_factory=list)  # boundary edges in height order


@dataclass
class SnakeGraph:
    tiles: list
    edges: dict                   # EdgeKey -> variable name
    pieces: list = field(default_factory=list)
    window: int = 0
    forbidden: frozenset = frozenset()   # window edges

    @property
    def is_finite(self) -> bool:
        return not any(isinstance(p, ZigZagWithLimit) for p in self.pieces)

    @property
    def vertices(self) -> list[Vertex]:
        return sorted({v for e in self.edges for v in e})

    def __len__(self) -> int:
        return len(self.tiles)


@dataclass(frozen=True)
class PerfectMatching:
    edges: frozenset
    heights: tuple = ()

    def to_json(self, G: SnakeGraph) -> dict:
        return {"heights": list(self.heights),
                "edges": sorted(G.edges[e] for e in self.edges)}


# ---------------------------------------------------------------------------
# construction

def _assemble(tiles: list[Tile]) -> dict:
    edges: dict = {}
    for t in tiles:
        for side, name in t.edges.items():
            k = t.edge_key(side)
            if k in edges and edges[k] != name:
                raise AssertionError(f"inconsistent gluing at tile {t.index}")
            edges[k] = name
    return edges


def required_window(T: Triangulation, gamma: Arc, H: int | None = 6) -> int:
    S = T.surface
    h = 6 if H is None else H
    dep = max([T.depth] + [S.point_depth(p) for p in gamma.endpoints])
    return dep + h + 4


def build(T: Triangulation, gamma: Arc, H: int | None = 6, window: int | None = None,
          start: MarkedPoint | None = None) -> SnakeGraph:
    """Snake graph of ``gamma`` on the window polygon of ``T``."""
    if not is_fan_triangulation(T):
        raise NotFanTriangulation("snake graphs need a fan triangulation")
    if contains_arc(T, gamma):
        raise ArcInTriangulation(str(gamma))
    S = T.surface
    N = window or required_window(T, gamma, H)
    W = Window(S, N)
    u, v = gamma.endpoints
    if start is not None:
        if start not in (u, v):
            raise ValueError("start must be an endpoint")
        if start == v:
            u, v = v, u
    seq = crossing_sequence(T, gamma, N, start=u)
    if not seq:
        raise ArcInTriangulation(f"{gamma} crosses nothing")
    arcs = [tuple(k) for k, _ in seq]
    tiles: list[Tile] = []
    for i, tau in enumerate(arcs):
        prev_apex = u if i == 0 else _apex(arcs[i - 1], tau)
        next_apex = v if i == len(arcs) - 1 else _apex(arcs[i + 1], tau)
        if i == 0:
            a, b = tau
            origin, attach = (0, 0), None
        else:
            pt = tiles[-1]
            w = prev_apex  # other end of the previous crossed arc
            if pt.corners["SE"] == w:
                a = pt.corners["NE"]
                origin, attach = (pt.origin[0] + 1, pt.origin[1]), "R"
            elif pt.corners["NW"] == w:
                a = _other(tau, pt.corners["NE"])
                origin, attach = (pt.origin[0], pt.origin[1] + 1), "U"
            else:
                raise AssertionError("crossed arcs do not share a triangle")
            b = _other(tau, a)
        corners = {"NW": a, "SW": prev_apex, "SE": b, "NE": next_apex}
        edges = {s: W.var(corners[x], corners[y]) for s, (x, y) in SIDES.items()}
        orient = 1 if _ccw(W, [a, prev_apex, b, next_apex]) else -1
        tiles.append(Tile(i + 1, W.var(*tau), edges, corners, origin, attach, orient,
                          seq[i][1]))
    G = SnakeGraph(tiles, _assemble(tiles), window=N)
    forb = set()
    for t in tiles:
        for side in SIDES:
            x, y = SIDES[side]
            if W.is_window_edge(t.corners[x], t.corners[y]):
                forb.add(t.edge_key(side))
    G.forbidden = frozenset(forb)
    G.pieces = _pieces(T, W, tiles)
    return G


def _other(pair, p):
    a, b = pair
    return b if p == a else a


def _apex(nbr: tuple, tau: tuple):
    """Vertex of the triangle between two crossed arcs that is not on ``tau``."""
    shared = set(nbr) & set(tau)
    if len(shared) != 1:
        raise AssertionError("consecutive crossed arcs must share one endpoint")
    return _other(nbr, shared.pop())


def _ccw(W: Window, pts) -> bool:
    idx = [W.pos[p] for p in pts]
    k = idx.index(min(idx))
    rot = idx[k:] + idx[:k]
    return rot == sorted(rot)


def _pieces(T: Triangulation, W: Window, tiles: list[Tile]) -> list:
    """Split tiles into finite runs and window-truncated infinite zig-zags."""
    S = T.surface
    pieces: list = []
    k = 0
    while k < len(tiles):
        own = tiles[k].owner
        j = k
        if own[0] == "dom":
            while j + 1 < len(tiles) and tiles[j + 1].owner[:2] == own[:2]:
                j += 1
        run = tiles[k:j + 1]
        dom = T.domains[own[1]] if own[0] == "dom" else None
        if isinstance(dom, IncomingFan) and max(t.owner[2] for t in run) >= W.N - 1:
            acc = S.acc_point(dom.seg)
            steps = []
            for t in run:
                for side in SIDES:
                    x, y = (t.corners[c] for c in SIDES[side])
                    if _is_step(dom.seg, x, y) and dom.source not in (x, y):
                        key = t.edge_key(side)
                        lo = min(x.index, y.index)
                        if key not in [s for _, s in steps]:
                            steps.append((lo, key))
            steps.sort(key=lambda s: s[0])
            lim = LimitTile(run[-1].index, W.var(dom.source, acc))
            pieces.append(ZigZagWithLimit(run, lim, [s for _, s in steps]))
        elif pieces and isinstance(pieces[-1], FiniteRun):
            pieces[-1].tiles.extend(run)
        else:
            pieces.append(FiniteRun(list(run)))
        k = j + 1
    return pieces


def _is_step(seg: int, x, y) -> bool:
    return (isinstance(x, Pt) and isinstance(y, Pt) and x.seg == seg == y.seg
            and abs(x.index - y.index) == 1)


def from_directions(dirs: str, labels: Iterable[str] | None = None) -> SnakeGraph:
    """Abstract snake graph; ``dirs`` lists 'R'/'U' gluings after the first tile."""
    tiles: list[Tile] = []
    names = iter(labels) if labels is not None else None
    pos = (0, 0)
    for i in range(len(dirs) + 1):
        att = None if i == 0 else dirs[i - 1]
        if att == "R":
            pos = (pos[0] + 1, pos[1])
        elif att == "U":
            pos = (pos[0], pos[1] + 1)
        elif att is not None:
            raise ValueError(f"bad direction {att!r}")
        tiles.append(Tile(i + 1, f"t{i + 1}", {}, {}, pos, att))
    edges: dict = {}
    for t in tiles:
        for side in SIDES:
            k = t.edge_key(side)
            if k not in edges:
                edges[k] = next(names) if names else "e%d" % len(edges)
            t.edges[side] = edges[k]
    return SnakeGraph(tiles, edges, [FiniteRun(tiles)])


def zigzag_graph(n: int) -> SnakeGraph:
    return from_directions("".join("RU"[i % 2] for i in range(n - 1)))


def straight_graph(n: int) -> SnakeGraph:
    return from_directions("R" * (n - 1))


# ---------------------------------------------------------------------------
# matchings

def _adjacency(G: SnakeGraph, allowed) -> dict:
    adj: dict = {v: [] for v in G.vertices}
    for e in sorted(allowed, key=lambda e: sorted(e)):
        a, b = sorted(e)
        adj[a].append((b, e))
        adj[b].append((a, e))
    return adj


def _enumerate(G: SnakeGraph, allowed) -> Iterator[frozenset]:
    verts = G.vertices
    adj = _adjacency(G, allowed)
    covered: set = set()
    chosen: list = []

    def rec(k: int):
        while k < len(verts) and verts[k] in covered:
            k += 1
        if k == len(verts):
            yield frozenset(chosen)
            return
        v = verts[k]
        covered.add(v)
        for w, e in adj[v]:
            if w not in covered:
                covered.add(w)
                chosen.append(e)
                yield from rec(k + 1)
                chosen.pop()
                covered.discard(w)
        covered.discard(v)
    yield from rec(0)


def heights(G: SnakeGraph, edges: frozenset) -> tuple:
    out = []
    for p in G.pieces:
        if isinstance(p, ZigZagWithLimit):
            out.append(height(p, edges))
    return tuple(out)


def height(piece: ZigZagWithLimit, edges: frozenset) -> int:
    """Index of the first boundary step of the piece used by the matching.

    An arc that enters the fan through its limit arc has one matching that
    uses no fan step at all (it goes around the limit); that term has height 0.
    """
    for h, key in enumerate(piece.steps):
        if key in edges:
            return h
    return 0


def matchings(G: SnakeGraph, H: int | None = None) -> list[PerfectMatching]:
    """Window-free perfect matchings with every zig-zag height at most H.

    Sorted lexicographically by (height vector, local edge labels).
    """
    allowed = [e for e in G.edges if e not in G.forbidden]
    out = []
    for m in _enumerate(G, allowed):
        hs = heights(G, m)
        if H is not None and any(h > H for h in hs):
            continue
        out.append(PerfectMatching(m, hs))
    out.sort(key=lambda P: (P.heights, sorted(G.edges[e] for e in P.edges)))
    return out


def all_matchings(G: SnakeGraph) -> list[frozenset]:
    """Every perfect matching, window edges included."""
    return list(_enumerate(G, list(G.edges)))


def is_perfect_matching(G: SnakeGraph, edges: Iterable[EdgeKey]) -> bool:
    seen: set = set()
    for e in edges:
        if e not in G.edges or seen & set(e):
            return False
        seen |= set(e)
    return seen == set(G.vertices)


def brute_force_count(G: SnakeGraph) -> int:
    """Count perfect matchings by testing every edge subset of the right size."""
    V = G.vertices
    E = list(G.edges)
    if len(V) % 2:
        return 0
    return sum(is_perfect_matching(G, c) for c in combinations(E, len(V) // 2))


def weight_monomial(G: SnakeGraph, P: PerfectMatching) -> Monomial:
    exps: dict[str, int] = {}
    for e in P.edges:
        name = G.edges[e]
        exps[name] = exps.get(name, 0) + 1
    return Monomial.of(exps)


def crossing_monomial(G: SnakeGraph) -> Monomial:
    exps: dict[str, int] = {}
    for t in G.tiles:
        exps[t.diagonal] = exps.get(t.diagonal, 0) + 1
    return Monomial.of(exps)


# ---------------------------------------------------------------------------
# signs and positions

def sign_function(G: SnakeGraph, seed: int = 1) -> dict:
    """Edge signs: bottom and right of a tile agree, top and left are opposite."""
    if not G.tiles:
        raise ValueError("empty snake graph")
    out: dict = {}
    s = seed
    for i, t in enumerate(G.tiles):
        if i:
            s = -s
        for side, val in (("S", s), ("E", s), ("N", -s), ("W", -s)):
            k = t.edge_key(side)
            if k in out and out[k] != val:
                raise AssertionError("sign function is inconsistent")
            out[k] = val
    return out


def edge_positions(G: SnakeGraph, seed: int = 1) -> list[dict]:
    """Per tile, map from position I..IV to side name."""
    sg = sign_function(G, seed)
    out = []
    for t in G.tiles:
        walk = ["S", "E", "N", "W"] if t.orientation > 0 else ["S", "W", "N", "E"]
        signs = [sg[t.edge_key(s)] for s in walk]
        first = next(k for k in range(4) if signs[k] < 0 and signs[k - 1] > 0)
        order = walk[first:] + walk[:first]
        out.append(dict(zip(("I", "II", "III", "IV"), order)))
    return out


# ---------------------------------------------------------------------------
# output

def to_dot(G: SnakeGraph) -> str:
    lim = {p.limit.index for p in G.pieces if isinstance(p, ZigZagWithLimit)}
    dashed = {t.edge_key(s) for t in G.tiles if t.index in lim for s in SIDES}
    lines = ["graph snake {", "  node [shape=point];"]
    names = {v: f"v{v[0]}_{v[1]}" for v in G.vertices}
    for v, n in names.items():
        lines.append(f'  {n} [pos="{v[0]},{v[1]}!"];')
    for e in sorted(G.edges, key=lambda e: sorted(e)):
        a, b = sorted(e)
        style = ", style=dashed" if e in dashed or e in G.forbidden else ""
        lines.append(f'  {names[a]} -- {names[b]} [label="{G.edges[e]}"{style}];')
    for t in G.tiles:
        star = " *" if t.index in lim else ""
        lines.append(f"  // tile {t.index}: {t.diagonal}{star}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def describe(G: SnakeGraph) -> str:
    rows = []
    for t in G.tiles:
        rows.append(f"tile {t.index} {t.attach or '-'} diag={t.diagonal} "
                    + " ".join(f"{s}={t.edges[s]}" for s in "SENW"))
    for p in G.pieces:
        if isinstance(p, ZigZagWithLimit):
            rows.append(f"zigzag tiles {p.tiles[0].index}..{p.tiles[-1].index} "
                        f"limit={p.limit.limit_weight}")
    return "\n".join(rows)
