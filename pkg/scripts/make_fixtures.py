"""Write the preset triangulations and sample fan data as JSON for the CLI."""
import argparse
import json
from pathlib import Path

from infgon import hyperbolic as hyp
from infgon import mutation as mu
from infgon.cli import PRESETS


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out", type=Path, nargs="?", default=Path("fixtures"))
    a = ap.parse_args()
    a.out.mkdir(parents=True, exist_ok=True)

    files = {f"{name}.json": make().to_json() for name, make in PRESETS.items()}
    files["fan_geometric.json"] = hyp.geometric_incoming(n=72).to_json()
    files["fan_harmonic.json"] = hyp.harmonic_outgoing(72).to_json()
    files["program_out_to_in.json"] = mu.MutationProgram([mu.OutgoingToIncoming(0)], 32).to_json()
    for name, obj in sorted(files.items()):
        (a.out / name).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
        print(a.out / name)


if __name__ == "__main__":
    main()
