"""``infgon`` command line.

Exit codes: 0 verified / ok, 1 falsified / invalid, 2 usage error.
Triangulations are read from JSON files, or from ``preset:NAME`` (see
``PRESETS``). Marked points are written ``s0:3`` or ``acc:a``; a bare
integer ``k`` means ``s0:k`` so polygon arcs can be given as ``"0,3"``.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from . import hyperbolic as hyp
from . import laurent, mutation, snakegraph, triangulation as tri
from .surface import Acc, Arc, Pt, Surface, parse_point

PRESETS: dict[str, Callable[[], tri.Triangulation]] = {
    "square": lambda: tri.polygon_triangulation(4, [(0, 2)]),
    "pentagon_fan": lambda: tri.polygon_fan(5),
    "hexagon_fan": lambda: tri.polygon_fan(6),
    "i1_fan": lambda: tri.i1_incoming_fan(0),
    "in_fan": lambda: tri.i1_incoming_fan(0),
    "out_fan": lambda: tri.i1_outgoing_fan(1),
    "i2_zigzag": lambda: tri.i2_zigzag(),
    "octagon_T": lambda: tri.octagon_pair()[0],
    "octagon_T2": lambda: tri.octagon_pair()[1],
}


class UsageError(Exception):
    pass


def _point(text: str):
    text = text.strip()
    if text.lstrip("-").isdigit():
        return Pt(0, int(text))
    try:
        return parse_point(text)
    except ValueError as e:
        raise UsageError(str(e)) from e


def _arc(text: str) -> Arc:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"arc needs two endpoints: {text!r}")
    try:
        return Arc.of(_point(parts[0]), _point(parts[1]))
    except ValueError as e:
        raise UsageError(str(e)) from e


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read {path}: {e}") from e


def _surface(path: str | None) -> Surface | None:
    if path is None:
        return None
    return Surface.from_json(_load_json(path))


def _tri(spec: str | None, surface: Surface | None = None) -> tri.Triangulation:
    if spec is None:
        raise UsageError("--tri is required")
    if spec.startswith("preset:"):
        name = spec[7:]
        if name not in PRESETS:
            raise UsageError(f"unknown preset {name!r}; have {sorted(PRESETS)}")
        return PRESETS[name]()
    data = _load_json(spec)
    if surface is None and "surface" not in data:
        raise UsageError("triangulation file has no surface; pass --surface")
    return tri.Triangulation.from_json(data, surface)


def _emit(out, obj, fmt: str, text: str):
    if fmt == "json":
        out.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _verdict(out, ok: bool, exact: bool, H: int) -> int:
    tag = "exact" if exact else f"truncated, H={H}"
    out.write(("VERIFIED" if ok else "FALSIFIED") + f" ({tag})\n")
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# subcommands

def cmd_surface(a, out) -> int:
    S = _surface(a.surface) if a.surface else _tri(a.tri).surface
    pts = S.window(a.N)
    obj = {"surface": S.to_json(), "window": [str(p) for p in pts]}
    _emit(out, obj, a.format, " ".join(str(p) for p in pts))
    return 0


def cmd_tri(a, out) -> int:
    T = _tri(a.tri, _surface(a.surface))
    if a.action == "validate":
        rep = tri.validate(T, a.N)
        if rep.ok:
            out.write(f"OK (N={a.N})\n")
            return 0
        for e in rep.errors:
            out.write(f"{type(e).__name__}: {e}\n")
        return 1
    if a.action == "limits":
        arcs = tri.limit_arcs(T)
        _emit(out, [str(x) for x in arcs], a.format, "\n".join(str(x) for x in arcs) or "(none)")
        return 0
    if a.action == "types":
        rows = [(acc, side.value, tri.type_at(T, acc, side).value)
                for acc, side, _ in T.surface.one_sided()]
        _emit(out, rows, a.format, "\n".join(f"acc:{x}({s}) {t}" for x, s, t in rows))
        return 0
    _emit(out, T.to_json(), "json", "")
    return 0


def cmd_mutate(a, out) -> int:
    T = _tri(a.tri, _surface(a.surface))
    if not a.program:
        raise UsageError("--program is required")
    prog = mutation.MutationProgram.from_json(_load_json(a.program))
    try:
        T2, rep = mutation.apply_program(T, prog, a.N)
    except (mutation.MoveInapplicable, mutation.NonAdmissibleAtTruncation) as e:
        out.write(f"{type(e).__name__}: {e}\n")
        return 1
    if a.format == "json":
        _emit(out, {"triangulation": T2.to_json(),
                    "stable_after": {mutation._txt(k): v for k, v in
                                     sorted(rep.stable_after.items(),
                                            key=lambda t: mutation._txt(t[0]))}}, "json", "")
    else:
        out.write(json.dumps(T2.to_json(), sort_keys=True) + "\n")
        out.write(rep.text() + "\n")
    return 0


def cmd_classify(a, out) -> int:
    T = _tri(a.src, _surface(a.surface))
    T2 = _tri(a.dst, _surface(a.surface))
    res = mutation.classify_reachability(T, T2, a.cap, a.N)
    obj = {"class": res.kind.value, "detail": res.detail,
           "program": res.program.to_json() if res.program else None,
           "obstruction": list(res.obstruction) if res.obstruction else None}
    _emit(out, obj, a.format, res.text())
    return 0


def cmd_snake(a, out) -> int:
    T = _tri(a.tri, _surface(a.surface))
    G = snakegraph.build(T, _arc(a.arc), H=a.H)
    if a.format == "dot":
        out.write(snakegraph.to_dot(G))
        return 0
    Ms = snakegraph.matchings(G, a.H)
    if a.format == "json":
        _emit(out, {"tiles": len(G), "window": G.window,
                    "matchings": [P.to_json(G) for P in Ms]}, "json", "")
    else:
        seed = 1 if a.seed == "+" else -1
        pos = snakegraph.edge_positions(G, seed)
        rows = [f"tile {t.index} " + " ".join(f"{k}={p[k]}" for k in ("I", "II", "III", "IV"))
                for t, p in zip(G.tiles, pos)]
        out.write(snakegraph.describe(G) + f"\npositions (seed {a.seed}):\n"
                  + "\n".join(rows) + f"\nmatchings: {len(Ms)}\n")
    return 0


def cmd_expand(a, out) -> int:
    T = _tri(a.tri, _surface(a.surface))
    s = laurent.expand(T, _arc(a.arc), a.H)
    obj = {"series": s.partial_sum.to_json(), "height_bound": a.H,
           "term_count": s.term_count, "exact": s.exact}
    _emit(out, obj, a.format, s.text())
    return 0


def cmd_ptolemy(a, out) -> int:
    T = _tri(a.tri, _surface(a.surface))
    pts = [_point(x) for x in a.quad.split(",")]
    if len(pts) != 4:
        raise UsageError("--quad needs four points")
    ok = laurent.ptolemy_check(T, tuple(pts), a.H)
    return _verdict(out, ok, T.surface.is_finite, a.H)


def cmd_skein(a, out) -> int:
    T = _tri(a.tri, _surface(a.surface))
    ok = laurent.skein_check(T, _arc(a.a), _arc(a.b), a.H)
    return _verdict(out, ok, T.surface.is_finite, a.H)


def cmd_realize(a, out) -> int:
    if not a.data:
        raise UsageError("--data is required")
    data = hyp.FanData.from_json(_load_json(a.data))
    try:
        r = hyp.realize_fan(a.kind, data, a.N, a.tol)
    except hyp.IncompatibleData as e:
        out.write(f"IncompatibleData: {e}\n")
        return 1
    _emit(out, r.to_json(), "json", "")
    return 0


def _fan_key(T: tri.Triangulation, p):
    d = T.domains[0]
    if isinstance(p, Acc):
        return "star"
    if p == d.source:
        return "src"
    if isinstance(p, Pt) and p.seg == d.seg:
        return p.index
    raise UsageError(f"{p} is not a point of the fan")


def fan_values(T: tri.Triangulation, data: hyp.FanData, N: int) -> dict:
    """Variable values of the elementary incoming fan at p_0 read off ``data``."""
    S = T.surface
    d = T.domains[0]
    src, seg = d.source, d.seg
    vals = {S.var_name(src, S.acc_point(seg)): data.star}
    for i in range(1, N + 1):
        vals[S.var_name(src, Pt(seg, i))] = data.x(i)
        vals[S.var_name(Pt(seg, i), Pt(seg, i + 1))] = data.s(i)
    return vals


def cmd_oracle(a, out) -> int:
    T = _tri(a.tri, _surface(a.surface))
    d = T.domains[0] if T.domains else None
    if not (isinstance(d, tri.IncomingFan) and d.source == Pt(d.seg, 0) and not T.separators):
        raise UsageError("oracle-check needs an elementary incoming fan at s0:0")
    if not a.data:
        raise UsageError("--data is required")
    data = hyp.FanData.from_json(_load_json(a.data))
    gamma = _arc(a.arc)
    r = hyp.realize_fan("incoming", data, a.N, a.tol)
    measured = hyp.measure_lambda(r, *(_fan_key(T, p) for p in gamma.endpoints))
    deepest = max(T.surface.point_depth(p) for p in gamma.endpoints)
    H = a.N - deepest if any(isinstance(p, Acc) for p in gamma.endpoints) else a.H
    s = laurent.expand(T, gamma, H)
    symbolic = s.partial_sum.evaluate(fan_values(T, data, a.N + 2))
    rel = abs(measured - symbolic) / abs(symbolic)
    out.write(f"measured={measured:.12g} symbolic={symbolic:.12g} rel={rel:.3g}\n")
    ok = rel <= max(a.tol, 1e-6)
    out.write(("VERIFIED" if ok else "FALSIFIED") + "\n")
    return 0 if ok else 1


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-N", type=int, default=32, help="truncation window (default 32)")
    common.add_argument("-H", type=int, default=6, help="height bound (default 6)")
    common.add_argument("--tol", type=float, default=1e-9)
    common.add_argument("--seed", choices=["+", "-"], default="+",
                        help="sign-function seed (default +)")
    common.add_argument("--format", choices=["text", "json", "dot"], default="text")
    common.add_argument("--surface", help="surface JSON (if not embedded in --tri)")

    p = argparse.ArgumentParser(prog="infgon", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("surface", parents=[common], help="print a window of a surface")
    s.add_argument("--tri")
    s.set_defaults(fn=cmd_surface)

    s = sub.add_parser("tri", parents=[common], help="validate or inspect a triangulation")
    s.add_argument("action", choices=["validate", "limits", "types", "show"])
    s.add_argument("--tri")
    s.set_defaults(fn=cmd_tri)

    s = sub.add_parser("mutate", parents=[common], help="run a mutation program")
    s.add_argument("--tri")
    s.add_argument("--program")
    s.set_defaults(fn=cmd_mutate)

    s = sub.add_parser("classify", parents=[common], help="reachability between two triangulations")
    s.add_argument("--from", dest="src", required=True)
    s.add_argument("--to", dest="dst", required=True)
    s.add_argument("--cap", type=int, default=64)
    s.set_defaults(fn=cmd_classify)

    for name, fn, help_ in (("snake", cmd_snake, "snake graph of an arc"),
                            ("expand", cmd_expand, "Laurent expansion of an arc")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("--tri")
        s.add_argument("--arc", required=True)
        s.set_defaults(fn=fn)

    s = sub.add_parser("ptolemy", parents=[common], help="check a Ptolemy relation")
    s.add_argument("--tri")
    s.add_argument("--quad", required=True)
    s.set_defaults(fn=cmd_ptolemy)

    s = sub.add_parser("skein", parents=[common], help="check a skein relation")
    s.add_argument("--tri")
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.set_defaults(fn=cmd_skein)

    s = sub.add_parser("realize", parents=[common], help="realize fan data in the upper half-plane")
    s.add_argument("--kind", choices=["incoming", "outgoing"], default="incoming")
    s.add_argument("--data")
    s.set_defaults(fn=cmd_realize)

    s = sub.add_parser("oracle-check", parents=[common],
                       help="compare a measured lambda length with its expansion")
    s.add_argument("--tri")
    s.add_argument("--arc", required=True)
    s.add_argument("--data")
    s.set_defaults(fn=cmd_oracle)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return a.fn(a, out)
    except UsageError as e:
        err.write(f"infgon: {e}\n")
        return 2
    except (ValueError, KeyError) as e:
        err.write(f"infgon: {type(e).__name__}: {e}\n")
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
