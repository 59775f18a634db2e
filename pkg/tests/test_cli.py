import json
import pathlib
import re
import shlex
import subprocess
import sys

import pytest

from radokit.cli import EXIT_EXHAUSTED, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# -- documented examples ------------------------------------------------------------


def test_witness_example(capsys):
    assert run(capsys, "witness", "--graph", "bit", "--u", "0,1", "--v", "2")[:2] == (0, "11\n")


def test_truncate_example(capsys):
    code, out, _ = run(capsys, "truncate", "--graph", "bit", "--n", "3", "--format", "edges")
    assert code == 0 and out == "0 1\n1 2\n"


def test_bogus_selector_is_a_usage_error(capsys):
    code, _, err = run(capsys, "truncate", "--graph", "bogus", "--n", "3")
    assert code == EXIT_USAGE and "usage" in err


def test_console_script_runs():
    r = subprocess.run([sys.executable, "-m", "radokit", "witness", "--graph", "bit", "--u", "0,1",
                        "--v", "2"], capture_output=True, text=True, check=False)
    assert r.returncode == 0 and r.stdout.strip() == "11"


# -- JSON output ---------------------------------------------------------------------

JSON_COMMANDS = [
    ["construct", "--graph", "prime", "--n", "5"],
    ["truncate", "--graph", "seeded:3", "--n", "6"],
    ["witness", "--graph", "shift:concat", "--u", "0", "--v", "1"],
    ["extcheck", "--graph", "bit", "--size", "2"],
    ["iso", "--a", "prime", "--b", "seeded:1", "--rounds", "8"],
    ["iso", "--a", "seeded:2", "--generic", "--rounds", "10"],
    ["embed", "--src", "path", "--tgt", "bit", "--n", "5"],
    ["clique", "--graph", "bit", "--steps", "4"],
    ["switch", "--graph", "bit", "--set", "0", "--n", "3"],
    ["edit", "--graph", "bit", "--delete", "0", "--flip", "1:2", "--n", "4"],
    ["pigeonhole", "--graph", "bit", "--parts", "2"],
    ["logic", "parse", "--sentence", "forall x (exists y (x ~ y))"],
    ["logic", "eval", "--graph", "bit", "--n", "5", "--sentence", "exists x (exists y (x ~ y))"],
    ["logic", "decide", "--sentence", "exists x (forall y !(x ~ y))"],
    ["logic", "sigma", "--m", "1", "--n", "1"],
    ["logic", "zeroone", "--sentence", "exists x (exists y (x ~ y))", "--n", "20", "--samples", "20"],
    ["logic", "hyper", "--family", "K2", "--graph", "bit", "--n", "5",
     "--sentence", "exists x (exists y E(x, y))"],
    ["fraisse", "check", "--class", "Kn:3", "--size", "3"],
    ["fraisse", "limit", "--class", "Kn:3", "--n", "8"],
    ["fraisse", "witness", "--class", "Kn:3", "--u", "0,1", "--v", "2"],
    ["groups", "cayley", "--group", "z2", "--seed", "3", "--size", "2"],
    ["groups", "sqrt", "--group", "z", "--a", "4"],
    ["groups", "sumfree", "--seed", "1", "--prefix", "100"],
    ["groups", "cyclic", "--seq", "concat", "--against", "rand:7"],
]


@pytest.mark.parametrize("argv", JSON_COMMANDS, ids=lambda a: " ".join(a[:2]))
def test_json_output_parses(capsys, argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code in (EXIT_OK, EXIT_FAIL), err
    json.loads(out)


# -- payloads ---------------------------------------------------------------------------


def test_truncate_json_round_trips(capsys):
    from radokit import FiniteGraph, make_bit, truncate

    _, out, _ = run(capsys, "truncate", "--graph", "bit", "--n", "6", "--format", "json")
    assert FiniteGraph.from_json(out) == truncate(make_bit(), 6)


def test_zeroone_payload(capsys):
    code, out, _ = run(capsys, "logic", "zeroone", "--sentence", "exists x (exists y (x ~ y))",
                       "--n", "30", "--samples", "20", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["frequency"] == 1.0 and data["decide"] is True and data["agree"]


def test_sumfree_payload(capsys):
    _, out, _ = run(capsys, "groups", "sumfree", "--seed", "4", "--prefix", "300", "--format", "json")
    data = json.loads(out)
    assert data["triangle_free"] and {"set_prefix", "all_odd"} <= data.keys()


def test_sqrt_pairs(capsys):
    _, out, _ = run(capsys, "groups", "sqrt", "--group", "z2", "--a", "2,2", "--format", "json")
    assert json.loads(out)["roots"] == [[1, 1]]


def test_decide_text(capsys):
    assert run(capsys, "logic", "decide", "--sentence", "exists x (exists y (x ~ y))")[1].strip() == "true"


def test_eval_graph_file(capsys, tmp_path):
    f = tmp_path / "k3.edges"
    f.write_text("0 1\n0 2\n1 2\n")
    code, out, _ = run(capsys, "logic", "eval", "--graph-file", str(f), "--sentence",
                       "forall u (forall v (!(u = v) -> exists z (!(z = u) & !(z = v) & (z ~ u) & !(z ~ v))))")
    assert code == 0 and out.strip() == "false"


# -- exit codes ---------------------------------------------------------------------------


def test_parse_error_exit(capsys):
    code, _, err = run(capsys, "logic", "parse", "--sentence", "forall x (x ~ )")
    assert code == EXIT_USAGE and "position" in err


def test_unbound_variable_exit(capsys):
    assert run(capsys, "logic", "decide", "--sentence", "x ~ y")[0] == EXIT_USAGE


def test_exhausted_exit(capsys):
    code, _, err = run(capsys, "witness", "--graph", "seeded:42", "--u", "0,1,2,3", "--bound", "6")
    assert code == EXIT_EXHAUSTED and "exhausted" in err


def test_unsatisfiable_exit(capsys):
    code, _, _ = run(capsys, "witness", "--graph", "limit:Kn:2", "--u", "0,1")
    assert code == EXIT_FAIL


def test_overlapping_query_exit(capsys):
    assert run(capsys, "witness", "--graph", "bit", "--u", "0", "--v", "0")[0] == EXIT_USAGE


def test_missing_arguments_exit(capsys):
    assert run(capsys, "truncate", "--graph", "bit")[0] == EXIT_USAGE


def test_bad_seed_exit(capsys):
    assert run(capsys, "groups", "sumfree", "--seed", str(2**64))[0] == EXIT_USAGE


def test_extcheck_failure_is_exit_one(capsys):
    # the complete graph has no vertex missing a given neighbour
    code, out, _ = run(capsys, "extcheck", "--graph", "complement:limit:Kn:2", "--size", "1",
                       "--format", "json")
    assert code == EXIT_FAIL and not json.loads(out)["ok"]


def test_version(capsys):
    assert run(capsys, "--version")[0] == 0


# -- README examples -----------------------------------------------------------------------


def _readme_examples():
    """``$ radokit ... # exit N`` lines of the README, with any output shown below them."""
    text = (pathlib.Path(__file__).parents[1] / "README.md").read_text()
    block = text.split("```console\n", 1)[1].split("```", 1)[0]
    out = []
    for line in block.splitlines():
        m = re.match(r"\$ radokit (.*?)\s+# exit (\d)$", line)
        if m:
            out.append((shlex.split(m.group(1)), int(m.group(2)), []))
        elif out:
            out[-1][2].append(line)
    return out


README_EXAMPLES = _readme_examples()


@pytest.mark.parametrize("argv,code,expected", README_EXAMPLES,
                         ids=[" ".join(a[:3]) for a, _, _ in README_EXAMPLES])
def test_readme_examples(capsys, argv, code, expected):
    got, out, err = run(capsys, *argv)
    assert got == code, err
    if expected:
        assert out.splitlines() == expected
