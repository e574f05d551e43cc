import math
import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infgon import hyperbolic as hyp
from infgon import laurent as L
from infgon import triangulation as tri
from infgon.hyperbolic import INFINITY, FanData, Horocycle, Moebius, real
from infgon.surface import Acc, Arc, Pt


def test_distance_standard_formula():
    z1, z2 = complex(0.3, 0.7), complex(-1.1, 2.5)
    cosh = 1 + abs(z1 - z2) ** 2 / (2 * z1.imag * z2.imag)
    assert math.isclose(math.cosh(hyp.hyperbolic_distance(z1, z2)), cosh, rel_tol=1e-12)
    assert math.isclose(hyp.hyperbolic_distance(1j, 5j), math.log(5), rel_tol=1e-12)


def test_lambda_against_vertical_geodesic():
    assert math.isclose(hyp.lambda_length(Horocycle(real(0), 1), Horocycle(INFINITY, 1)), 1)
    for d, h in [(0.5, 3.0), (2.0, 0.1), (1e-3, 7.0)]:
        lam = hyp.lambda_length(Horocycle(real(0), d), Horocycle(INFINITY, h))
        assert math.isclose(lam, math.sqrt(h / d), rel_tol=1e-12)


@settings(max_examples=60)
@given(st.floats(-5, 5), st.floats(0.01, 3), st.floats(-5, 5), st.floats(0.01, 3))
def test_lambda_matches_closed_form(x, d1, y, d2):
    if abs(x - y) < 1e-3:
        return
    h1, h2 = Horocycle(real(x), d1), Horocycle(real(y), d2)
    assert math.isclose(hyp.lambda_length(h1, h2), hyp.lambda_closed_form(h1, h2),
                        rel_tol=1e-9)


def test_coincident_bases():
    with pytest.raises(hyp.CoincidentBases):
        hyp.lambda_length(Horocycle(real(1), 1), Horocycle(real(1), 2))


@pytest.mark.parametrize("xs", [(1, 1, 1), (2, 1, 1), (0.3, 4.0, 2.2)])
def test_realize_triangle(xs):
    r = hyp.realize_triangle(*xs)
    got = (hyp.measure_lambda(r, 0, "inf"), hyp.measure_lambda(r, 1, "inf"),
           hyp.measure_lambda(r, 0, 1))
    assert all(math.isclose(a, b, rel_tol=1e-12) for a, b in zip(got, xs))
    with pytest.raises(ValueError):
        hyp.realize_triangle(1, 0, 1)


def test_incoming_partial_sums():
    data = FanData.from_functions(lambda i: 1.0, lambda i: 2.0 ** -i, 64, star=1.0)
    r = hyp.realize_fan("incoming", data, 40)
    T = tri.i1_incoming_fan(0)
    lab = L.fan_labels(T, 0)
    env = {lab.spoke(i): data.x(i) for i in range(1, 42)}
    env |= {lab.side(i): data.s(i) for i in range(1, 42)}
    env[T.surface.var_name(Pt(0, 0), Acc("a"))] = data.star
    for s in (1, 2, 5):
        series = L.incoming_fan_closed_form(lab, s, 39).partial_sum.evaluate(env)
        assert abs(hyp.measure_lambda(r, s, "star") - series) <= 1e-6
        assert math.isclose(series, 2.0 ** (1 - s), rel_tol=1e-9)


def test_outgoing_realization():
    data = hyp.harmonic_outgoing(64)
    assert hyp.check_compatibility("outgoing", data, 40).ok
    r = hyp.realize_fan("outgoing", data, 40)
    xs = [r.placement[i].x for i in range(1, 41)]
    assert all(b > a for a, b in zip(xs, xs[1:]))
    assert xs[-1] - xs[len(xs) // 2] > 10  # p_n runs off to infinity


def test_incompatible_data():
    div = FanData.from_functions(lambda i: 1.0, lambda i: 1.0, 64, star=1.0)
    with pytest.raises(hyp.IncompatibleData):
        hyp.realize_fan("incoming", div, 40)
    flat = FanData.from_functions(lambda i: 1.0, lambda i: 1.0 / (i * (i + 1)), 64)
    assert not hyp.check_compatibility("outgoing", flat, 40).ok


def test_compatibility_passes():
    assert hyp.check_compatibility("incoming", hyp.geometric_incoming(), 40).ok
    data = hyp.geometric_incoming()
    att = [(data.s(n) / 2, data.s(n) / 2) for n in range(1, 41)]
    assert hyp.check_compatibility("incoming", data, 40, attached=att).ok
    bad = [(data.s(n), data.s(n)) for n in range(1, 41)]
    assert not hyp.check_compatibility("incoming", data, 40, attached=bad).ok


def test_width_formula():
    ones = FanData.from_functions(lambda i: 1.0, lambda i: 1.0, 40)
    for n in range(2, 20):
        assert hyp.width(ones, n) == 2 * (n - 1)
    inc = hyp.geometric_incoming(n=64)
    w = [hyp.width(inc, n) for n in range(2, 41)]
    assert w[-1] - w[20] < 1e-5 * w[-1]
    out = hyp.harmonic_outgoing(64)
    w = [hyp.width(out, n) for n in range(2, 41)]
    assert all(b > a for a, b in zip(w, w[1:]))


def test_width_geometric_agrees():
    data = hyp.geometric_incoming(star=1.4, c=-0.2, rho=0.8, s0=0.5, n=40)
    r = hyp.realize_fan("incoming", data, 30)
    for n in range(2, 31):
        assert math.isclose(hyp.width(data, n), hyp.width_geometric(r, n), rel_tol=1e-8)


def test_euclidean_ratio_tends_to_half():
    data = hyp.geometric_incoming(star=0.8, c=0.3, rho=0.75, s0=2.0, n=64)
    r = hyp.realize_fan("incoming", data, 40)
    res = [abs(data.s(i) / (r.placement[i + 1].x - r.placement[i].x) - 0.5)
           for i in range(1, 40)]
    assert hyp._tends_to_zero(res, len(res), 1e-9)


def test_json_round_trips():
    data = hyp.geometric_incoming(n=8)
    assert FanData.from_json(data.to_json()) == data
    out = hyp.realize_fan("incoming", hyp.geometric_incoming(n=16), 8).to_json()
    assert out["truncation"] == 8 and out["points"]["src"]["base"] is None


# properties -----------------------------------------------------------------

@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_ptolemy_on_every_quad(seed):
    data = hyp.random_incoming(random.Random(seed), n=40)
    r = hyp.realize_fan("incoming", data, 14)
    keys = [k for k in hyp.cyclic_keys(r) if k != "star"]
    for q in combinations(keys, 4):
        res, scale = hyp.ptolemy_residual(r, *q)
        assert res <= 1e-9 * scale


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_moebius_invariance(seed):
    rng = random.Random(seed)
    r = hyp.realize_fan("incoming", hyp.random_incoming(rng, n=20), 10)
    g = Moebius.random(rng)
    r2 = r.transformed(g)
    for a, b in combinations([k for k in r.decoration if k != "star"], 2):
        l1, l2 = hyp.measure_lambda(r, a, b), hyp.measure_lambda(r2, a, b)
        assert math.isclose(l1, l2, rel_tol=1e-9)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_spokes_converge_to_limit(seed):
    data = hyp.random_incoming(random.Random(seed), n=64)
    r = hyp.realize_fan("incoming", data, 40)
    lim = hyp.measure_lambda(r, "src", "star")
    res = [abs(hyp.measure_lambda(r, "src", i) - lim) for i in range(1, 41)]
    assert hyp._tends_to_zero(res, 40, 1e-9)


def test_arcs_to_accumulation_shrink():
    out = hyp.harmonic_outgoing(64)
    r = hyp.realize_fan("outgoing", out, 40)
    lam = [hyp.measure_lambda(r, "src", i) for i in range(1, 41)]
    assert all(b < a for a, b in zip(lam, lam[1:]))
    assert hyp._tends_to_zero(lam, 40, 1e-9)
    inc = hyp.geometric_incoming(n=64)
    r = hyp.realize_fan("incoming", inc, 40)
    sides = [hyp.measure_lambda(r, i, i + 1) for i in range(1, 40)]
    assert hyp._tends_to_zero(sides, 39, 1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.floats(0.05, 20))
def test_convex_cone(seed, t):
    rng = random.Random(seed)
    a, b = hyp.random_incoming(rng, n=64), hyp.random_incoming(rng, n=64)
    assert hyp.check_compatibility("incoming", a + b, 40).ok
    assert hyp.check_compatibility("incoming", a.scaled(t), 40).ok
