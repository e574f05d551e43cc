"""Classifier verdicts between the one-accumulation-point families."""
from infgon import mutation as mu
from infgon import triangulation as tri

SHORT = {mu.Reach.FINITE: "F", mu.Reach.FINITE_SEQ_OF_INFINITE: "FS",
         mu.Reach.REQUIRES_INFINITE_SEQ: "inf", mu.Reach.UNKNOWN: "?"}


def families() -> dict:
    fams = {f"In{k}": tri.i1_incoming_fan(k, poly=[(i, k) for i in range(k - 1)])
            for k in range(3)}
    fams["Out1"] = tri.i1_outgoing_fan(1)
    fams["Out2"] = tri.i1_outgoing_fan(2, poly=[(0, 2)])
    return fams


def main() -> None:
    F = families()
    names = sorted(F)
    print("from\\to " + " ".join(f"{n:>5}" for n in names))
    for a in names:
        row = [SHORT[mu.classify_reachability(F[a], F[b]).kind] for b in names]
        print(f"{a:<7} " + " ".join(f"{c:>5}" for c in row))
    print("\noctagon pair:", mu.classify_reachability(*tri.octagon_pair()).text())


if __name__ == "__main__":
    main()
