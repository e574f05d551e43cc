"""Flips, canned infinite mutations, and the reachability classifier.

Infinite mutations are certified on a window: the generator's flip schedule
is replayed on the truncated polygon and must land exactly on the window of
the claimed result, with every arc flipped at most once.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import product
from typing import Iterable, Union

from .surface import Acc, Arc, MarkedPoint, Pt, Side, Surface, parse_arc
from .triangulation import (FinitePoly, FiniteCount, IncomingFan, MoreThanCap, OutgoingFan,
                            Triangulation, Window, ZigZagAroundAcc, ZigZagToLimit, _ZigZag,
                            _pair, bad_arcs, domain_info, intersection_count, is_member,
                            members, stronger, window_arcs, window_size)


class LimitArcNotFlippable(ValueError):
    pass


class NotInTriangulation(ValueError):
    pass


class NotAFan(ValueError):
    pass


class NotAZigZag(ValueError):
    pass


class NotAnOutgoingFan(ValueError):
    pass


class NonAdmissibleAtTruncation(ValueError):
    def __init__(self, msg: str, arc=None):
        super().__init__(msg)
        self.arc = arc


class MoveInapplicable(ValueError):
    def __init__(self, index: int, reason: str = ""):
        super().__init__(f"move {index} inapplicable: {reason}")
        self.index = index


class NotFinitelyReachable(ValueError):
    pass


# ---------------------------------------------------------------------------
# moves

@dataclass(frozen=True)
class Flip:
    arc: Arc


@dataclass(frozen=True)
class ShiftFanSource:
    fan: int


@dataclass(frozen=True)
class ZigZagToFans:
    zig: int


@dataclass(frozen=True)
class OutgoingToIncoming:
    fan: int


@dataclass(frozen=True)
class IncomingToOutgoing:
    fan: int
    requires_infinite_sequence: bool = True


Move = Union[Flip, ShiftFanSource, ZigZagToFans, OutgoingToIncoming, IncomingToOutgoing]


def move_text(m: Move) -> str:
    if isinstance(m, Flip):
        return f"Flip({m.arc})"
    name = type(m).__name__
    return f"{name}({getattr(m, 'fan', getattr(m, 'zig', ''))})"


def move_to_json(m: Move) -> dict:
    if isinstance(m, Flip):
        return {"flip": str(m.arc)}
    key = {ShiftFanSource: "shift_fan_source", ZigZagToFans: "zigzag_to_fans",
           OutgoingToIncoming: "outgoing_to_incoming",
           IncomingToOutgoing: "incoming_to_outgoing"}[type(m)]
    return {key: getattr(m, "fan", getattr(m, "zig", 0))}


def move_from_json(d: dict) -> Move:
    (k, v), = d.items()
    if k == "flip":
        return Flip(parse_arc(v))
    table = {"shift_fan_source": ShiftFanSource, "zigzag_to_fans": ZigZagToFans,
             "outgoing_to_incoming": OutgoingToIncoming,
             "incoming_to_outgoing": IncomingToOutgoing}
    if k not in table:
        raise ValueError(f"unknown move {k!r}")
    return table[k](int(v))


@dataclass
class MutationProgram:
    moves: list = field(default_factory=list)
    window: int | None = None

    def __len__(self) -> int:
        return len(self.moves)

    def to_json(self) -> dict:
        return {"moves": [move_to_json(m) for m in self.moves], "window": self.window}

    @classmethod
    def from_json(cls, data: dict | str | list) -> "MutationProgram":
        if isinstance(data, str):
            data = json.loads(data)
        if isinstance(data, list):
            data = {"moves": data}
        return cls([move_from_json(m) for m in data["moves"]], data.get("window"))

    def text(self) -> str:
        return "[" + ", ".join(move_text(m) for m in self.moves) + "]"


# ---------------------------------------------------------------------------
# flips on a window polygon

def _neighbours(W: Window, arcs: set) -> dict:
    nb = {p: set() for p in W.points}
    for i, p in enumerate(W.points):
        q = W.points[(i + 1) % W.m]
        nb[p].add(q)
        nb[q].add(p)
    for a in arcs:
        x, y = tuple(a)
        nb[x].add(y)
        nb[y].add(x)
    return nb


def quad_apexes(W: Window, arcs: set, p, q, nb: dict | None = None) -> tuple:
    nb = nb or _neighbours(W, arcs)
    common = nb[p] & nb[q]
    one = [w for w in W.between(p, q) if w in common]
    two = [w for w in W.between(q, p) if w in common]
    if len(one) != 1 or len(two) != 1:
        raise AssertionError(f"no quadrilateral around {p},{q}")
    return one[0], two[0]


def window_flip(W: Window, arcs: set, alpha: frozenset) -> frozenset:
    p, q = tuple(alpha)
    c, d = quad_apexes(W, arcs, p, q)
    arcs.discard(alpha)
    beta = _pair(c, d)
    arcs.add(beta)
    return beta


# ---------------------------------------------------------------------------
# elementary flip on the infinite triangulation

def _materialise(T: Triangulation, k: int, level: int) -> Triangulation:
    """Move members of domain k up to ``level`` into the separators."""
    S = T.surface
    d = T.domains[k]
    if level < d.start:
        return T
    extra = [Arc.of(p, q) for _, (p, q) in members(S, d, level)
             if not S.is_boundary_pair(p, q)]
    doms = list(T.domains)
    doms[k] = replace(d, start=level + 1)
    seps = list(T.separators) + [a for a in extra if a not in T.separators]
    return Triangulation(S, tuple(seps), tuple(doms), T.limit_arcs)


def _flip_separator(T: Triangulation, gamma: Arc) -> Arc:
    S = T.surface
    results = []
    for N in (window_size(T, gamma), window_size(T, gamma) + 4):
        W = Window(S, N)
        arcs = set(window_arcs(T, N))
        c, d = quad_apexes(W, arcs, *gamma.endpoints)
        results.append(Arc.of(c, d))
    if results[0] != results[1]:
        raise NonAdmissibleAtTruncation(f"quadrilateral of {gamma} not stable", gamma)
    return results[0]


def flip(T: Triangulation, gamma: Arc) -> Triangulation:
    S = T.surface
    if gamma in T.limit_arcs:
        raise LimitArcNotFlippable(f"{gamma} is a limit arc")
    if S.is_boundary_pair(*gamma.endpoints):
        raise NotInTriangulation(f"{gamma} is a boundary arc")
    if gamma not in T.separators:
        for k, d in enumerate(T.domains):
            lvl = is_member(S, d, gamma)
            if lvl is None:
                continue
            if isinstance(d, FinitePoly):
                rest = tuple(a for a in d.arcs if a != gamma)
                doms = list(T.domains)
                doms[k] = FinitePoly(rest)
                T = Triangulation(S, T.separators + (gamma,), tuple(doms), T.limit_arcs)
            else:
                T = _materialise(T, k, lvl + 1)
            break
        else:
            raise NotInTriangulation(str(gamma))
    new = _flip_separator(T, gamma)
    seps = tuple(new if a == gamma else a for a in T.separators)
    return Triangulation(S, seps, T.domains, T.limit_arcs)


# ---------------------------------------------------------------------------
# generators, certified by a window flip schedule

def _certify(T: Triangulation, T2: Triangulation, schedule, N: int) -> list:
    """Replay ``schedule`` (window pairs) at window N; return the flip trace."""
    W = Window(T.surface, N)
    arcs = set(window_arcs(T, N))
    trace = []
    touched = set()
    for alpha in schedule(W):
        if alpha not in arcs:
            raise NonAdmissibleAtTruncation(f"schedule flips absent arc {_txt(alpha)}")
        if alpha in touched:
            raise NonAdmissibleAtTruncation(f"arc {_txt(alpha)} flipped twice")
        beta = window_flip(W, arcs, alpha)
        touched.add(beta)
        trace.append((alpha, beta))
    target = set(window_arcs(T2, N))
    if arcs != target:
        diff = sorted(_txt(a) for a in arcs ^ target)
        raise NonAdmissibleAtTruncation(f"window {N} mismatch: {diff[:4]}")
    return trace


def _txt(pair) -> str:
    return ",".join(sorted(str(x) for x in pair))


def _generator_window(T: Triangulation, N: int | None) -> int:
    return max(N or 0, window_size(T) + 4)


def shift_fan_source(T: Triangulation, k: int, N: int | None = None,
                     trace: list | None = None) -> Triangulation:
    S = T.surface
    d = T.domains[k] if 0 <= k < len(T.domains) else None
    if not isinstance(d, IncomingFan):
        raise NotAFan(f"domain {k} is not an incoming fan")
    new_src = Pt(d.seg, d.start - 1)
    if new_src == d.source:
        raise NotAFan("no base point to shift onto")
    old_lim = Arc.of(d.source, S.acc_point(d.seg))
    doms = list(T.domains)
    doms[k] = IncomingFan(new_src, d.seg, d.start + 1)
    seps = list(T.separators)
    if not S.is_boundary_pair(*old_lim.endpoints):
        seps.append(old_lim)
    T2 = Triangulation.build(S, seps, doms)
    N = _generator_window(T2, N)

    def sched(W):
        for i in range(d.start, N):
            yield _pair(d.source, Pt(d.seg, i))
    t = _certify(T, T2, sched, N)
    if trace is not None:
        trace.extend(t)
    return T2


def outgoing_to_incoming(T: Triangulation, k: int, N: int | None = None,
                         trace: list | None = None) -> Triangulation:
    S = T.surface
    d = T.domains[k] if 0 <= k < len(T.domains) else None
    if not isinstance(d, OutgoingFan):
        raise NotAnOutgoingFan(f"domain {k} is not an outgoing fan")
    if d.start < 1:
        raise NotAnOutgoingFan("outgoing fan has no base point before its first arc")
    src = Pt(d.seg, d.start - 1)
    acc = S.acc_point(d.seg)
    doms = list(T.domains)
    doms[k] = IncomingFan(src, d.seg, d.start + 1)
    T2 = Triangulation.build(S, T.separators, doms)
    N = _generator_window(T2, N)

    def sched(W):
        for i in range(d.start, N - 1):
            yield _pair(acc, Pt(d.seg, i))
    t = _certify(T, T2, sched, N)
    if trace is not None:
        trace.extend(t)
    return T2


def incoming_to_outgoing(T: Triangulation, k: int, N: int | None = None, trace=None):
    """Always refused: the fan's limit arc would have to be flipped."""
    d = T.domains[k] if 0 <= k < len(T.domains) else None
    if not isinstance(d, IncomingFan):
        raise NotAFan(f"domain {k} is not an incoming fan")
    lim = Arc.of(d.source, T.surface.acc_point(d.seg))
    raise NonAdmissibleAtTruncation(
        f"turning an incoming fan outward moves its limit arc {lim}", lim)


def zigzag_to_fans(T: Triangulation, k: int, N: int | None = None,
                   trace: list | None = None) -> Triangulation:
    S = T.surface
    d = T.domains[k] if 0 <= k < len(T.domains) else None
    if not isinstance(d, _ZigZag):
        raise NotAZigZag(f"domain {k} is not a zig-zag")
    src = Pt(d.left, d.start)
    first = Arc.of(src, Pt(d.right, d.start))
    left_fan = IncomingFan(src, d.left, d.start + 2)
    right_fan = IncomingFan(src, d.right, d.start + 1)
    doms = list(T.domains)
    doms[k:k + 1] = [left_fan, right_fan]
    seps = list(T.separators)
    if not S.is_boundary_pair(*first.endpoints) and first not in seps:
        seps.append(first)
    T2 = Triangulation.build(S, seps, doms)
    if isinstance(d, ZigZagToLimit):
        old = Arc.of(S.acc_point(d.left), S.acc_point(d.right))
        T2 = Triangulation(S, T2.separators + (old,), T2.domains, T2.limit_arcs)
    N = _generator_window(T2, N)
    W = Window(S, N)
    plan = plan_window(W, set(window_arcs(T, N)), set(window_arcs(T2, N)))
    t = _certify(T, T2, lambda W: iter(plan), N)
    if trace is not None:
        trace.extend(t)
    return T2


# ---------------------------------------------------------------------------
# window planner

def _cells(W: Window, common: set) -> list[list]:
    cells = []
    stack = [list(W.points)]
    while stack:
        poly = stack.pop()
        idx = {p: i for i, p in enumerate(poly)}
        cut = None
        for a in common:
            x, y = tuple(a)
            if x in idx and y in idx:
                i, j = sorted((idx[x], idx[y]))
                if j - i > 1 and not (i == 0 and j == len(poly) - 1):
                    cut = (i, j)
                    break
        if cut is None:
            cells.append(poly)
            continue
        i, j = cut
        stack.append(poly[i:j + 1])
        stack.append(poly[j:] + poly[:i + 1])
    return cells


def _inside(cell: list, arcs: set) -> set:
    s = set(cell)
    n = len(cell)
    idx = {p: i for i, p in enumerate(cell)}
    out = set()
    for a in arcs:
        x, y = tuple(a)
        if x in s and y in s and (idx[x] - idx[y]) % n not in (1, n - 1):
            out.add(a)
    return out


def _bfs(W: Window, A: set, B: set, cap: int = 5000) -> list | None:
    start, goal = frozenset(A), frozenset(B)
    prev = {start: None}
    q = deque([start])
    while q:
        cur = q.popleft()
        if cur == goal:
            path = []
            while prev[cur] is not None:
                cur, alpha = prev[cur]
                path.append(alpha)
            return path[::-1]
        for alpha in sorted(cur, key=_txt):
            nxt = set(cur)
            window_flip(W, nxt, alpha)
            nxt = frozenset(nxt)
            if nxt not in prev:
                prev[nxt] = (cur, alpha)
                if len(prev) > cap:
                    return None
                q.append(nxt)
    return None


def _to_fan(W: Window, arcs: set, v) -> list:
    """Flips (alpha, beta) turning ``arcs`` into the fan at v."""
    out = []
    while True:
        nb = _neighbours(W, arcs)
        pick = None
        for a in sorted(arcs, key=_txt):
            if v in a:
                continue
            c, d = quad_apexes(W, arcs, *tuple(a), nb=nb)
            if v in (c, d):
                pick = a
                break
        if pick is None:
            return out
        beta = window_flip(W, arcs, pick)
        out.append((pick, beta))


def plan_window(W: Window, A: set, B: set) -> list:
    """Flip schedule (arcs of the current set, in order) from A to B.

    Arcs common to A and B are never flipped. Small cells are solved by
    breadth-first search; larger ones by direct hits then a fan detour.
    """
    A, B = set(A), set(B)
    plan = []
    for cell in _cells(W, A & B):
        a, b = _inside(cell, A), _inside(cell, B)
        if a == b:
            continue
        if len(cell) <= 8:
            path = _bfs(W, a | (A - a), b | (A - a))
            if path is not None:
                for alpha in path:
                    window_flip(W, A, alpha)
                plan.extend(path)
                continue
        cur = set(A)
        steps = []
        progress = True
        while progress and _inside(cell, cur) != b:
            progress = False
            nb = _neighbours(W, cur)
            for alpha in sorted(_inside(cell, cur) - b, key=_txt):
                c, d = quad_apexes(W, cur, *tuple(alpha), nb=nb)
                if _pair(c, d) in b:
                    window_flip(W, cur, alpha)
                    steps.append(alpha)
                    progress = True
                    break
        if _inside(cell, cur) != b:
            inner_b = _inside(cell, B)
            deg = {p: sum(p in x for x in inner_b) for p in cell}
            v = max(cell, key=lambda p: (deg[p], -cell.index(p)))
            there = _to_fan(W, cur, v)
            steps.extend(x for x, _ in there)
            back_arcs = (cur - _inside(cell, cur)) | inner_b
            back = _to_fan(W, back_arcs, v)
            for alpha, beta in reversed(back):
                window_flip(W, cur, beta)
                steps.append(beta)
        A = cur
        plan.extend(steps)
    return plan


# ---------------------------------------------------------------------------
# programs

@dataclass
class OrbitReport:
    """For each arc of the final window, the step after which it stayed put."""
    window: int
    stable_after: dict
    flips_per_arc: dict = field(default_factory=dict)

    def text(self) -> str:
        return "\n".join(f"{_txt(a)}: step {k}" for a, k in
                         sorted(self.stable_after.items(), key=lambda t: _txt(t[0])))


def apply_move(T: Triangulation, m: Move, N: int | None = None,
               trace: list | None = None) -> Triangulation:
    if isinstance(m, Flip):
        out = flip(T, m.arc)
        if trace is not None:
            trace.append((_pair(*m.arc.endpoints), None))
        return out
    if isinstance(m, ShiftFanSource):
        return shift_fan_source(T, m.fan, N, trace)
    if isinstance(m, OutgoingToIncoming):
        return outgoing_to_incoming(T, m.fan, N, trace)
    if isinstance(m, ZigZagToFans):
        return zigzag_to_fans(T, m.zig, N, trace)
    if isinstance(m, IncomingToOutgoing):
        return incoming_to_outgoing(T, m.fan, N, trace)
    raise TypeError(m)


def apply_program(T: Triangulation, prog: MutationProgram | Iterable[Move],
                  N: int | None = None) -> tuple[Triangulation, OrbitReport]:
    moves = prog.moves if isinstance(prog, MutationProgram) else list(prog)
    if N is None and isinstance(prog, MutationProgram):
        N = prog.window
    N = N or 32
    states = [set(window_arcs(T, N))]
    counts: dict = {}
    for k, m in enumerate(moves):
        trace: list = []
        try:
            T = apply_move(T, m, N, trace)
        except NonAdmissibleAtTruncation:
            raise
        except (LimitArcNotFlippable, NotInTriangulation, NotAFan, NotAZigZag,
                NotAnOutgoingFan) as e:
            raise MoveInapplicable(k, str(e)) from e
        if T.depth + 2 > N:
            raise NonAdmissibleAtTruncation(f"program outgrew window {N} at move {k}")
        for alpha, _ in trace:
            counts[alpha] = counts.get(alpha, 0) + 1
        states.append(set(window_arcs(T, N)))
    final = states[-1]
    stable = {}
    for a in final:
        k = len(states) - 1
        while k > 0 and a in states[k - 1]:
            k -= 1
        stable[a] = k
    from .triangulation import validate
    rep = validate(T, N)
    if not rep.ok:
        raise NonAdmissibleAtTruncation(f"result invalid at window {N}: {rep.errors[0]}")
    return T, OrbitReport(N, stable, counts)


def same_at(T: Triangulation, T2: Triangulation, N: int) -> bool:
    return set(window_arcs(T, N)) == set(window_arcs(T2, N))


def equivalent(T: Triangulation, T2: Triangulation, N: int | None = None) -> bool:
    n = max(N or 0, window_size(T), window_size(T2))
    return same_at(T, T2, n) and same_at(T, T2, 2 * n) and \
        set(T.limit_arcs) == set(T2.limit_arcs)


def plan_finite_mutation(T: Triangulation, T2: Triangulation, cap: int = 64,
                         N: int | None = None) -> MutationProgram:
    c = intersection_count(T, T2, cap, N)
    if isinstance(c, MoreThanCap):
        raise NotFinitelyReachable(f"|T cap T'| exceeds {cap} or is infinite")
    if set(T.limit_arcs) != set(T2.limit_arcs):
        raise NotFinitelyReachable("limit arcs differ")
    n = max(N or 0, window_size(T), window_size(T2))
    W = Window(T.surface, n)
    A = set(window_arcs(T, n))
    plan = plan_window(W, A, set(window_arcs(T2, n)))
    moves = [Flip(Arc.of(*tuple(a))) for a in plan]
    cur = T
    for m in moves:
        cur = flip(cur, m.arc)
    if not equivalent(cur, T2, n):
        raise NotFinitelyReachable("planned flips do not reach the target")
    return MutationProgram(moves, n)


# ---------------------------------------------------------------------------
# reachability

class Reach(str, Enum):
    FINITE = "Finite"
    FINITE_SEQ_OF_INFINITE = "FiniteSeqOfInfinite"
    REQUIRES_INFINITE_SEQ = "RequiresInfiniteSeq"
    UNKNOWN = "Unknown"


@dataclass
class ReachabilityClass:
    kind: Reach
    program: MutationProgram | None = None
    obstruction: tuple | None = None     # (acc, side, kind of T, kind of T')
    detail: str = ""

    def text(self) -> str:
        if self.kind is Reach.REQUIRES_INFINITE_SEQ and self.obstruction:
            a, side, k1, k2 = self.obstruction
            return f"RequiresInfiniteSeq: {k1} ≻ {k2} at acc:{a}({side})"
        if self.program is not None:
            return f"{self.kind.value}: {self.program.text()}"
        if self.detail:
            return f"{self.kind.value}: {self.detail}"
        return self.kind.value


WITNESS_DEPTH = 2  # generator applications tried when no theorem applies


def _generators(T: Triangulation) -> list[Move]:
    out: list[Move] = []
    for k, d in enumerate(T.domains):
        if isinstance(d, IncomingFan):
            out.append(ShiftFanSource(k))
        elif isinstance(d, OutgoingFan):
            out.append(OutgoingToIncoming(k))
        elif isinstance(d, _ZigZag):
            out.append(ZigZagToFans(k))
    return out


def _search_witness(T: Triangulation, T2: Triangulation, depth: int, cap: int,
                    N: int | None) -> MutationProgram | None:
    frontier = [(T, [])]
    for level in range(depth + 1):
        nxt = []
        for cur, moves in frontier:
            c = intersection_count(cur, T2, cap, N)
            if not isinstance(c, MoreThanCap) and set(cur.limit_arcs) == set(T2.limit_arcs):
                try:
                    tail = plan_finite_mutation(cur, T2, cap, N)
                except NotFinitelyReachable:
                    tail = None
                if tail is not None:
                    return MutationProgram(moves + tail.moves, tail.window)
            if level == depth:
                continue
            for g in _generators(cur):
                try:
                    nxt.append((apply_move(cur, g, N), moves + [g]))
                except ValueError:
                    continue
        frontier = nxt
    return None


def classify_reachability(T: Triangulation, T2: Triangulation, cap: int = 64,
                          N: int | None = None) -> ReachabilityClass:
    c = intersection_count(T, T2, cap, N)
    if not isinstance(c, MoreThanCap):
        try:
            prog = plan_finite_mutation(T, T2, cap, N)
            return ReachabilityClass(Reach.FINITE, prog, detail=f"{c} crossings")
        except NotFinitelyReachable as e:
            return ReachabilityClass(Reach.UNKNOWN, detail=str(e))
    S = T.surface
    for a, side, _ in S.one_sided():
        d, d2 = domain_info(T, a, side), domain_info(T2, a, side)
        if stronger(d, d2):
            return ReachabilityClass(Reach.REQUIRES_INFINITE_SEQ,
                                     obstruction=(a, side.value, d.kind.value, d2.kind.value))
    bad = bad_arcs(T, T2, cap, N)
    if isinstance(bad, FiniteCount) and all(x in T2.limit_arcs for x in bad.arcs):
        prog = _search_witness(T, T2, len(bad.arcs) + 1, cap, N)
        return ReachabilityClass(Reach.FINITE_SEQ_OF_INFINITE, prog,
                                 detail=f"{len(bad.arcs)} bad arcs")
    # outside the theorem's hypothesis only an explicit, replayed witness counts
    depth = len(bad.arcs) + 1 if isinstance(bad, FiniteCount) else WITNESS_DEPTH
    prog = _search_witness(T, T2, min(depth, WITNESS_DEPTH), cap, N)
    if prog is not None:
        return ReachabilityClass(Reach.FINITE_SEQ_OF_INFINITE, prog, detail="explicit witness")
    return ReachabilityClass(Reach.UNKNOWN, detail=str(bad))
