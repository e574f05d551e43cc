"""Width w_n of a fan: closed formula next to the realized horocycle geometry."""
import argparse

from infgon import hyperbolic as hyp


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-N", type=int, default=30)
    ap.add_argument("--step", type=int, default=5)
    a = ap.parse_args()

    cases = {
        "incoming geometric": ("incoming", hyp.geometric_incoming(n=a.N + 8)),
        "outgoing harmonic": ("outgoing", hyp.harmonic_outgoing(a.N + 8)),
    }
    for name, (kind, data) in cases.items():
        r = hyp.realize_fan(kind, data, a.N)
        print(name)
        for n in range(2, a.N + 1, a.step):
            print(f"  n={n:>3}  w={hyp.width(data, n):>12.6g}  "
                  f"geometric={hyp.width_geometric(r, n):>12.6g}")


if __name__ == "__main__":
    main()
