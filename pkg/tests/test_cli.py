import io
import json
import subprocess
import sys

import pytest

from infgon import cli, hyperbolic as hyp


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_skein_on_square_is_exact():
    code, out, _ = run("skein", "--tri", "preset:square", "--a", "0,2", "--b", "1,3")
    assert (code, out) == (0, "VERIFIED (exact)\n")


def test_ptolemy_truncated():
    code, out, _ = run("ptolemy", "--tri", "preset:i1_fan", "--quad", "0,1,2,acc:a", "-H", "4")
    assert (code, out) == (0, "VERIFIED (truncated, H=4)\n")


def test_expand_three_terms():
    code, out, _ = run("expand", "--tri", "preset:i1_fan", "--arc", "s0:1,acc:a", "-H", "2")
    assert code == 0 and out.count(" + ") == 2
    code, out, _ = run("expand", "--tri", "preset:i1_fan", "--arc", "s0:1,acc:a", "-H", "2",
                       "--format", "json")
    obj = json.loads(out)
    assert obj["term_count"] == 3 and obj["exact"] is False and obj["height_bound"] == 2


def test_classify_lines():
    code, out, _ = run("classify", "--from", "preset:in_fan", "--to", "preset:out_fan")
    assert code == 0 and out == "RequiresInfiniteSeq: In ≻ Out at acc:a(left)\n"
    _, out, _ = run("classify", "--from", "preset:out_fan", "--to", "preset:in_fan",
                    "--format", "json")
    obj = json.loads(out)
    assert obj["class"] == "FiniteSeqOfInfinite"
    assert obj["program"]["moves"] == [{"outgoing_to_incoming": 0}]


def test_tri_subcommands():
    assert run("tri", "validate", "--tri", "preset:i2_zigzag", "-N", "16")[:2] == \
        (0, "OK (N=16)\n")
    assert run("tri", "types", "--tri", "preset:out_fan")[1] == "acc:a(left) Out\n"
    assert run("tri", "limits", "--tri", "preset:in_fan")[1] == "s0:0,acc:a\n"


def test_snake_formats():
    code, dot, _ = run("snake", "--tri", "preset:i1_fan", "--arc", "s0:1,acc:a", "-H", "2",
                       "--format", "dot")
    assert code == 0 and dot.startswith("graph snake {")
    _, plus, _ = run("snake", "--tri", "preset:i1_fan", "--arc", "s0:1,acc:a", "-H", "2")
    _, minus, _ = run("snake", "--tri", "preset:i1_fan", "--arc", "s0:1,acc:a", "-H", "2",
                      "--seed", "-")
    assert plus.endswith("matchings: 3\n") and plus != minus


def test_usage_errors_exit_2():
    assert run("bogus")[0] == 2
    code, _, err = run("expand", "--tri", "preset:nope", "--arc", "0,2")
    assert code == 2 and "unknown preset" in err
    assert run("expand", "--tri", "preset:square", "--arc", "0")[0] == 2
    assert run("mutate", "--tri", "preset:square")[0] == 2


def test_mutate_program(tmp_path):
    prog = tmp_path / "p.json"
    prog.write_text(json.dumps({"moves": [{"outgoing_to_incoming": 0}], "window": 24}))
    code, out, _ = run("mutate", "--tri", "preset:out_fan", "--program", str(prog), "-N", "24")
    assert code == 0
    bad = tmp_path / "q.json"
    bad.write_text(json.dumps({"moves": [{"zigzag_to_fans": 0}], "window": 24}))
    code, out, _ = run("mutate", "--tri", "preset:square", "--program", str(bad))
    assert code == 1 and out.startswith("MoveInapplicable")


def test_realize_and_oracle(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps(hyp.geometric_incoming(n=64).to_json()))
    code, out, _ = run("realize", "--data", str(good), "-N", "20")
    assert code == 0 and json.loads(out)["truncation"] == 20
    div = tmp_path / "div.json"
    div.write_text(json.dumps(hyp.FanData.from_functions(lambda i: 1.0, lambda i: 1.0, 64,
                                                         star=1.0).to_json()))
    assert run("realize", "--data", str(div), "-N", "20")[0] == 1
    code, out, _ = run("oracle-check", "--tri", "preset:i1_fan", "--arc", "s0:2,acc:a",
                       "--data", str(good), "-N", "40")
    assert code == 0 and out.endswith("VERIFIED\n")


def test_surface_window():
    code, out, _ = run("surface", "--tri", "preset:i1_fan", "-N", "3")
    assert code == 0 and "acc:a" in out


@pytest.mark.parametrize("argv", [
    ["expand", "--tri", "preset:i1_fan", "--arc", "s0:1,acc:a", "-H", "4", "--format", "json"],
    ["snake", "--tri", "preset:i1_fan", "--arc", "s0:2,acc:a", "--format", "json"],
    ["classify", "--from", "preset:octagon_T", "--to", "preset:octagon_T2", "--format", "json"],
])
def test_byte_identical_across_processes(argv):
    outs = {subprocess.run([sys.executable, "-m", "infgon.cli", *argv], capture_output=True,
                           env={"PYTHONHASHSEED": seed}).stdout for seed in ("1", "2")}
    assert len(outs) == 1 and outs.pop()
