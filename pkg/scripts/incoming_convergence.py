"""Measured lambda(p_s, star) against the truncated fan series as N grows."""
import argparse
import random

from infgon import hyperbolic as hyp
from infgon import laurent as L
from infgon import triangulation as tri
from infgon.cli import fan_values


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("-s", type=int, default=1, help="index of the arc's base point")
    ap.add_argument("--windows", type=int, nargs="+", default=[8, 16, 24, 32, 40])
    a = ap.parse_args()

    data = hyp.random_incoming(random.Random(a.seed), n=max(a.windows) + 8)
    T = tri.i1_incoming_fan(0)
    lab = L.fan_labels(T, 0)
    print(f"star={data.star:.6g}  s={a.s}")
    print(f"{'N':>4} {'measured':>16} {'series':>16} {'rel err':>10}")
    for N in a.windows:
        r = hyp.realize_fan("incoming", data, N)
        lam = hyp.measure_lambda(r, a.s, "star")
        env = fan_values(T, data, N + 2)
        series = L.incoming_fan_closed_form(lab, a.s, N - 1).partial_sum.evaluate(env)
        print(f"{N:>4} {lam:>16.12g} {series:>16.12g} {abs(lam - series) / series:>10.2e}")


if __name__ == "__main__":
    main()
