import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from planeaut.cli import main, run
from planeaut.field import FieldSpec
from planeaut.parse import parse_poly2, parse_polyT

from . import corpora

GOLDEN = Path(__file__).parent / "golden"
REGEN = os.environ.get("PLANEAUT_REGEN_GOLDEN") == "1"

WORKED_Q = ["--field", "q", "--s1", "x1 + 2*x2*T + T^2", "--s2", "x2 + T"]
WORKED_F2 = ["--field", "fp:2", "--s1", "x1 + (x2 + x1^2)*T + T^2", "--s2", "x2 + (x2^2 + x1^4)*T^2 + T^4"]

# (golden name, argv, exit code)
GOLDEN_CASES = [
    ("invariant_q", ["invariant", *WORKED_Q], 0),
    ("invariant_f2", ["invariant", *WORKED_F2], 0),
    ("decompose_not_automorphism", ["decompose", "--field", "q", "--f1", "x1 + x2^2", "--f2", "x2 + x1^2"], 1),
    ("validate_action_a2", ["validate-action", "--field", "q", "--s1", "x1", "--s2", "x2 + T^2"], 1),
]


def cli(argv, stdin_text=""):
    proc = subprocess.run(
        [sys.executable, "-m", "planeaut", *argv],
        input=stdin_text.encode(),
        capture_output=True,
    )
    return proc.returncode, proc.stdout


def call(argv, stdin=None):
    return run(argv, io.StringIO(json.dumps(stdin) if stdin is not None else ""))


@pytest.mark.parametrize("name, argv, code", GOLDEN_CASES, ids=[c[0] for c in GOLDEN_CASES])
def test_golden_output_is_byte_identical(name, argv, code):
    got_code, out = cli(argv)
    path = GOLDEN / f"{name}.json"
    if REGEN:
        path.write_bytes(out)
    assert got_code == code
    assert out == path.read_bytes()


def test_golden_contents():
    q = json.loads((GOLDEN / "invariant_q.json").read_text(encoding="utf-8"))
    assert (q["f"], q["companion"]) == ("x1 - x2^2", "x2")
    assert [(s["i"], s["j"], s["alpha"], s["l"]) for s in q["trace"]] == [(1, 2, "1", 2)]
    assert q["check"]["passed"] is True
    f2 = json.loads((GOLDEN / "invariant_f2.json").read_text(encoding="utf-8"))
    assert f2["f"] == "x1^2 + x2"
    bad = json.loads((GOLDEN / "validate_action_a2.json").read_text(encoding="utf-8"))
    assert bad == {"kind": "AxiomViolation", "axiom": "A2", "generator": "x2", "difference": "2*T*U"}
    dec = json.loads((GOLDEN / "decompose_not_automorphism.json").read_text(encoding="utf-8"))
    assert dec["kind"] == "NotAutomorphism"


def test_main_writes_json(capsys):
    assert main(["find-invariant", "--s1", "x1 + T", "--s2", "x2 + T"]) == 0
    assert json.loads(capsys.readouterr().out) == {"kind": "Invariant", "g": "x1 - x2"}


# -- commands -------------------------------------------------------------------------

def test_stdin_inputs():
    code, out = call(["invert"], {"field": "q", "f1": "x1 + x2^2", "f2": "x2"})
    assert code == 0 and out == {"field": "q", "f1": "x1 - x2^2", "f2": "x2"}
    code, out = call(["compose"], {"field": "q", "phi": {"f1": "x2", "f2": "x1"}, "psi": {"f1": "x1", "f2": "x2 + x1^2"}})
    assert code == 0 and out == {"field": "q", "f1": "x2", "f2": "x1 + x2^2"}


def test_field_mismatch_is_a_usage_error():
    code, out = call(["invert", "--field", "fp:2"], {"field": "q", "f1": "x1", "f2": "x2"})
    assert code == 2 and out["kind"] == "MixedFieldError"


def test_member_and_coordinates():
    code, out = call(["member", *WORKED_Q, "--g", "(x1 - x2^2)^3 + x1 - x2^2"])
    assert code == 0 and out == {"kind": "Member", "p": "t^3 + t", "f": "x1 - x2^2"}
    code, out = call(["member", *WORKED_Q, "--g", "x2"])
    assert code == 1 and out["kind"] == "NotMember"
    code, out = call(["is-coordinate", "--f", "x1*x2"])
    assert code == 1 and out["kind"] == "NotCoordinate"
    code, out = call(["is-coordinate", "--f", "x1 - x2^3"])
    assert code == 0


def test_ic_form_and_leading_relation():
    code, out = call(["ic-form", "--f", "x1 - x2^3"])
    assert code == 0 and out["kind"] == "ICForm"
    code, out = call(["ic-form", "--f", "x1^2*x2 + x1"])
    assert code == 1 and out == {"kind": "NotICShaped"}
    for extra in ([], ["--via-ic"]):
        code, out = call(["leading-relation", "--f1", "x1 + x2^3", "--f2", "x2", *extra])
        assert code == 0 and (out["i"], out["j"], out["alpha"], out["l"]) == (1, 2, "1", 3)
    code, out = call(["leading-relation", "--f1", "x1 + x2^2", "--f2", "x2 + x1^2"])
    assert code == 1 and out == {"kind": "NoRelation"}


def test_eval_action_and_validation():
    code, out = call(["eval-action", "--s1", "x1", "--s2", "x2 + x1*T", "--t", "x1"])
    assert code == 0 and (out["f1"], out["f2"]) == ("x1", "x1^2 + x2")
    code, out = call(["eval-action", "--s1", "x1", "--s2", "x2 + x1*T", "--t", "x2"])
    assert code == 2 and out["kind"] == "NotInvariantParameter"
    code, out = call(["validate-action", "--field", "fp:2", "--s1", "x1", "--s2", "x2 + x1*T + T^2"])
    assert code == 0 and out["kind"] == "ValidAction"
    code, out = call(["validate-action", "--s1", "x1 + 1", "--s2", "x2 + T"])
    assert code == 1 and out["axiom"] == "A1"


def test_inconclusive_and_usage_errors():
    code, out = call(["find-invariant", "--dmax", "1", *WORKED_Q])
    assert code == 1 and out["kind"] == "DegreeCapExceeded"
    code, out = call(["invariant", "--s1", "x1", "--s2", "x2"])
    assert code == 2 and out["kind"] == "TrivialAction"
    code, out = call(["decompose", "--f1", "2x1", "--f2", "x2"])
    assert code == 2 and out["kind"] == "SyntaxError"
    code, out = call(["no-such-command"])
    assert code == 2 and out["kind"] == "UsageError"
    code, out = call([])
    assert code == 2
    code, out = call(["invert", "--f1", "x1"])
    assert code == 2 and out["kind"] == "UsageError"


def test_gen_corpus(tmp_path):
    target = tmp_path / "maps.json"
    code, out = call(["gen-corpus", "--seed", "3", "--count", "4", "--field", "fp:3", "--output", str(target)])
    assert code == 0 and out == {"kind": "Corpus", "path": str(target), "count": 4}
    code, records = call(["gen-corpus", "--seed", "3", "--count", "4", "--field", "fp:3"])
    assert json.loads(target.read_text(encoding="utf-8")) == records
    code, records = call(["gen-corpus", "--kind", "actions", "--count", "2", "--field", "fp:5"])
    assert code == 0 and [r["kind"] for r in records] == ["CoAction", "CoAction"]


# -- parser round trip on the committed corpus ------------------------------------------

@pytest.mark.parametrize("kind", ["maps", "actions"])
@pytest.mark.parametrize("field", corpora.FIELDS)
def test_parser_round_trip_on_corpus(kind, field):
    records = json.loads(corpora.corpus_path(kind, field).read_text(encoding="utf-8"))
    spec = FieldSpec.parse(field)
    parse = parse_poly2 if kind == "maps" else parse_polyT
    keys = ("f1", "f2") if kind == "maps" else ("s1", "s2")
    for rec in records:
        for key in keys:
            text = rec["value"][key]
            assert str(parse(text, spec)) == text
