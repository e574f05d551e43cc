from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infgon.surface import (Acc, Accumulating, Arc, BoundaryArc, Finite, InvalidSurface,
                            NotCrossing, Pt, Side, Surface, cross, make_infinity_gon,
                            make_polygon, one_sided, parse_arc, parse_point, smooth_crossing,
                            truncate, two_sided)


def chords(n):
    return [Arc.of(Pt(0, i), Pt(0, j)) for i, j in combinations(range(n), 2)
            if (j - i) % n not in (1, n - 1)]


def test_polygon_sizes():
    assert len(chords(4)) == 2
    assert len(chords(5)) == 5
    S = make_polygon(4)
    assert len(truncate(S, 10)) == 4 and S.acc_count == 0
    with pytest.raises(InvalidSurface):
        make_polygon(3)


def test_infinity_gons():
    assert one_sided().acc_count == 1
    assert two_sided().acc_count == 2
    S = make_infinity_gon([Finite(3), Accumulating("a", Side.LEFT)])
    assert S.acc_count == 1
    with pytest.raises(InvalidSurface):
        make_infinity_gon([Accumulating("a", Side.LEFT), Accumulating("a", Side.LEFT)])


def test_truncation_windows():
    assert truncate(one_sided(), 3) == [Pt(0, 0), Pt(0, 1), Pt(0, 2), Acc("a")]
    w = truncate(two_sided(), 2)
    assert len(w) == 5 and w.count(Acc("a")) == 1


def test_cross_examples():
    S = make_polygon(6)
    a = lambda i, j: Arc.of(Pt(0, i), Pt(0, j))
    assert cross(S, a(0, 2), a(1, 3)) == 1
    assert cross(S, a(0, 2), a(2, 4)) == 0
    I1 = one_sided()
    assert cross(I1, Arc.of(Pt(0, 1), Pt(0, 3)), Arc.of(Pt(0, 2), Acc("a"))) == 1


def ends(curves):
    return {frozenset(c.endpoints) for c in curves}


def test_smoothing_examples():
    S = make_polygon(6)
    a = lambda i, j: Arc.of(Pt(0, i), Pt(0, j))
    one, two = smooth_crossing(S, a(0, 3), a(1, 4))
    assert ends(one) == ends([a(0, 1), a(3, 4)]) and ends(two) == ends([a(0, 4), a(1, 3)])
    assert isinstance(one[0], BoundaryArc) and not isinstance(two[1], BoundaryArc)
    sq = make_polygon(4)
    one, two = smooth_crossing(sq, a(0, 2), a(1, 3))
    assert all(isinstance(c, BoundaryArc) for c in one + two)
    I1 = one_sided()
    p = lambda i: Pt(0, i)
    one, two = smooth_crossing(I1, Arc.of(p(0), p(2)), Arc.of(p(1), Acc("a")))
    assert ends(one) == ends([Arc.of(p(0), p(1)), Arc.of(p(2), Acc("a"))])
    assert ends(two) == ends([Arc.of(p(0), Acc("a")), Arc.of(p(1), p(2))])
    with pytest.raises(NotCrossing):
        smooth_crossing(S, a(0, 2), a(2, 4))


def test_boundary_adjacency_through_accumulation():
    I1 = one_sided()
    # the accumulation point is adjacent to p_0 only
    assert I1.is_boundary_pair(Acc("a"), Pt(0, 0))
    assert not I1.is_boundary_pair(Acc("a"), Pt(0, 5))
    assert I1.is_boundary_pair(Pt(0, 4), Pt(0, 5))


def test_literals_round_trip():
    assert parse_point("s0:2") == Pt(0, 2)
    assert parse_point("acc:a") == Acc("a")
    assert str(parse_arc("s0:1,acc:a")) == "s0:1,acc:a"
    with pytest.raises(ValueError):
        parse_point("q")


def test_json_round_trip():
    S = make_infinity_gon([Finite(3), Accumulating("a", Side.LEFT)])
    assert Surface.from_json(S.to_json()) == S
    assert S.to_json() == {"boundary": [{"finite": 3}, {"acc": {"id": "a", "side": "left"}}]}


# properties -----------------------------------------------------------------

arc8 = st.tuples(st.integers(0, 7), st.integers(0, 7)).filter(lambda t: t[0] != t[1])


@given(arc8, arc8)
def test_cross_symmetric(a, b):
    S = make_polygon(8)
    A, B = Arc.of(Pt(0, a[0]), Pt(0, a[1])), Arc.of(Pt(0, b[0]), Pt(0, b[1]))
    assert cross(S, A, B) == cross(S, B, A)
    assert cross(S, A, A) == 0
    if set(a) & set(b):
        assert cross(S, A, B) == 0


@given(st.integers(1, 12), st.integers(1, 12), st.integers(1, 12), st.integers(1, 12))
def test_cross_interleaving_on_one_sided(i, j, k, l):
    S = one_sided()
    pts = [Pt(0, i), Pt(0, j), Pt(0, k), Acc("a") if l == 12 else Pt(0, l)]
    if len(set(pts)) < 4:
        return
    A, B = Arc.of(pts[0], pts[1]), Arc.of(pts[2], pts[3])
    key = lambda p: 10 ** 9 if isinstance(p, Acc) else p.index
    lo, hi = sorted(map(key, A.endpoints))
    inside = [lo < key(x) < hi for x in B.endpoints]
    assert cross(S, A, B) == int(inside[0] != inside[1])


@settings(max_examples=60)
@given(st.integers(5, 8), st.data())
def test_smoothing_is_compatible(n, data):
    S = make_polygon(n)
    arcs = chords(n)
    crossing = [(a, b) for a, b in combinations(arcs, 2) if cross(S, a, b)]
    a, b = data.draw(st.sampled_from(crossing))
    compatible = [c for c in arcs if not cross(S, c, a) and not cross(S, c, b)]
    for pair in smooth_crossing(S, a, b):
        assert not cross(S, *pair)
        for c in compatible:
            assert all(not cross(S, c, x) for x in pair)
