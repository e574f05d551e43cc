"""Independent oracles. Nothing here calls into the snake-graph machinery."""
from __future__ import annotations

import random
from collections import deque
from functools import lru_cache
from fractions import Fraction
from itertools import combinations


def _crosses(a, b) -> bool:
    (i, j), (k, l) = sorted(a), sorted(b)
    if len({i, j, k, l}) < 4:
        return False
    return (i < k < j) != (i < l < j)


def polygon_flip(n: int, diags: frozenset, d: tuple) -> tuple:
    """Flip diagonal d of an n-gon triangulation; returns the new diagonal."""
    edges = set(diags) | {tuple(sorted((i, (i + 1) % n))) for i in range(n)}
    i, j = sorted(d)
    apex = [w for w in range(n) if w not in (i, j)
            and tuple(sorted((i, w))) in edges and tuple(sorted((j, w))) in edges]
    one = [w for w in apex if i < w < j]
    two = [w for w in apex if not i < w < j]
    assert len(one) == 1 and len(two) == 1
    return tuple(sorted((one[0], two[0])))


def ptolemy_values(n: int, diags, values: dict) -> dict:
    """Lambda lengths of every chord from those of a triangulation.

    ``values`` maps sides (i, i+1) and the diagonals of ``diags`` to exact
    numbers. Each chord (i, j) is reached by repeatedly flipping the crossed
    diagonal that faces i, applying the exchange relation at each flip.
    """
    val = {tuple(sorted(k)): v for k, v in values.items()}
    base = frozenset(tuple(sorted(d)) for d in diags)
    side = lambda x, y: val[tuple(sorted((x, y)))]
    for i, j in combinations(range(n), 2):
        if (i, j) in val:
            continue
        cur = set(base)
        while (i, j) not in cur:
            edges = cur | {tuple(sorted((k, (k + 1) % n))) for k in range(n)}
            nb = {w for w in range(n) if tuple(sorted((i, w))) in edges}
            d = next(tuple(sorted((x, y))) for x in nb for y in nb
                     if x != y and tuple(sorted((x, y))) in cur and _crosses((x, y), (i, j)))
            e = polygon_flip(n, frozenset(cur), d)
            if e not in val:
                a, b, c, dd = sorted(set(d) | set(e))
                val[e] = (side(a, b) * side(c, dd) + side(b, c) * side(a, dd)) / val[d]
            cur.discard(d)
            cur.add(e)
    return val


def random_values(n: int, diags, rng: random.Random) -> dict:
    out = {}
    for i in range(n):
        out[tuple(sorted((i, (i + 1) % n)))] = Fraction(rng.randint(1, 9), rng.randint(1, 9))
    for d in diags:
        out[tuple(sorted(d))] = Fraction(rng.randint(1, 9), rng.randint(1, 9))
    return out


def flip_distance(n: int, A, B) -> int:
    """Breadth-first search in the flip graph of the n-gon."""
    A = frozenset(tuple(sorted(d)) for d in A)
    B = frozenset(tuple(sorted(d)) for d in B)
    dist = {A: 0}
    q = deque([A])
    while q:
        cur = q.popleft()
        if cur == B:
            return dist[cur]
        for d in cur:
            nxt = (cur - {d}) | {polygon_flip(n, cur, d)}
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                q.append(nxt)
    raise AssertionError("flip graph is connected")


def count_perfect_matchings(vertices, edges) -> int:
    """Exhaustive count: match the smallest uncovered vertex every possible way."""
    adj: dict = {v: set() for v in vertices}
    for e in edges:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)

    @lru_cache(maxsize=None)
    def go(left: frozenset) -> int:
        if not left:
            return 1
        v = min(left)
        return sum(go(left - {v, w}) for w in adj[v] if w in left)
    return go(frozenset(vertices))


def grid_snake(dirs: str):
    """Vertices and edges of unit squares glued by 'R'/'U' moves."""
    x = y = 0
    squares = [(0, 0)]
    for d in dirs:
        if d == "R":
            x += 1
        else:
            y += 1
        squares.append((x, y))
    edges = set()
    for (a, b) in squares:
        c = [(a, b), (a + 1, b), (a + 1, b + 1), (a, b + 1)]
        for i in range(4):
            edges.add(frozenset((c[i], c[(i + 1) % 4])))
    verts = {v for e in edges for v in e}
    return verts, edges


def fibonacci(n: int) -> int:
    a, b = 1, 2
    for _ in range(n - 1):
        a, b = b, a + b
    return a


def crossing_count(arc, diags) -> int:
    return sum(_crosses(arc, d) for d in diags)
