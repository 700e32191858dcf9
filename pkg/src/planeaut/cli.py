"""Command-line surface.  Every command prints one JSON document on stdout.

Exit codes: 0 success, 1 a mathematically negative answer (or an
inconclusive one, tagged by its ``kind``), 2 bad input or usage,
3 an internal falsification event.

Inputs come from flags (``--f1 'x1 + x2^2'``) or, when the flags are
absent, from a JSON document on stdin in the library's JSON forms.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import serialize
from .auto import (
    DepthExceeded,
    NotAutomorphism,
    NotCoordinate,
    PlaneMap,
    compose,
    coordinate_reduce,
    ic_form,
    invert,
    leading_relation,
    leading_relation_via_ic,
    tame_decompose,
)
from .errors import (
    AxiomViolation,
    DegreeCapExceeded,
    MixedFieldError,
    NotAutomorphismError,
    PlaneAutError,
    StuckReduction,
)
from .field import FieldSpec
from .gaction import CoAction, evaluate, find_invariant, validate
from .gen import GenConfig
from .parse import parse_poly2, parse_polyT
from .rentschler import invariant_coordinate, membership, verify_theorem1

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_FALSIFIED = 0, 1, 2, 3

NEGATIVE_ERRORS = (AxiomViolation, NotAutomorphismError, DegreeCapExceeded)


class UsageError(PlaneAutError):
    kind = "UsageError"


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class Session:
    """Resolved field plus whatever JSON arrived on stdin."""

    def __init__(self, args, stdin):
        self.args = args
        self._stdin = stdin
        self._data = None
        self._spec = None

    @property
    def data(self) -> dict:
        if self._data is None:
            text = self._stdin.read()
            try:
                self._data = json.loads(text) if text.strip() else {}
            except json.JSONDecodeError as exc:
                raise UsageError(f"stdin is not valid JSON: {exc}") from None
            if not isinstance(self._data, dict):
                raise UsageError("stdin JSON must be an object")
        return self._data

    @property
    def spec(self) -> FieldSpec:
        if self._spec is None:
            flag = self.args.field
            given = None
            if self.needs_stdin():
                given = self.data.get("field")
            if flag and given and FieldSpec.parse(flag) != FieldSpec.parse(given):
                raise MixedFieldError(f"--field {flag} disagrees with input field {given}")
            self._spec = FieldSpec.parse(flag or given or "q")
        return self._spec

    def needs_stdin(self) -> bool:
        return any(getattr(self.args, name, None) is None for name in self.args.poly_flags)

    def text(self, flag: str, key: str = None) -> str:
        value = getattr(self.args, flag)
        if value is not None:
            return value
        key = key or flag
        if key not in self.data:
            raise UsageError(f"missing --{flag.replace('_', '-')} (or '{key}' in stdin JSON)")
        return self.data[key]

    def poly2(self, flag: str, key: str = None):
        return parse_poly2(self.text(flag, key), self.spec)

    def map(self, prefix: str = "", key: str = None) -> PlaneMap:
        if key and getattr(self.args, prefix + "f1") is None and key in self.data:
            sub = self.data[key]
            return PlaneMap(parse_poly2(sub["f1"], self.spec), parse_poly2(sub["f2"], self.spec))
        return PlaneMap(self.poly2(prefix + "f1", "f1"), self.poly2(prefix + "f2", "f2"))

    def action(self) -> CoAction:
        return CoAction(parse_polyT(self.text("s1"), self.spec), parse_polyT(self.text("s2"), self.spec))


# -- commands ------------------------------------------------------------------

def cmd_validate_action(s: Session):
    sigma = validate(s.action())
    return EXIT_OK, {"kind": "ValidAction", **serialize.action_to_json(sigma)}


def cmd_invariant(s: Session):
    sigma = validate(s.action())
    res = invariant_coordinate(sigma)
    out = res.to_json()
    D = s.args.max_check_degree
    if D > 0:
        report = verify_theorem1(sigma, D, res)
        out["check"] = {k: v for k, v in report.to_json().items() if k != "f"}
        if not report.passed:
            logging.getLogger(__name__).error("invariant check failed: falsification event")
            return EXIT_FALSIFIED, {"kind": "CheckFailed", **out}
    return EXIT_OK, out


def cmd_find_invariant(s: Session):
    sigma = validate(s.action())
    return EXIT_OK, {"kind": "Invariant", "g": str(find_invariant(sigma, s.args.dmax))}


def cmd_decompose(s: Session):
    dec = tame_decompose(s.map())
    if isinstance(dec, NotAutomorphism):
        return EXIT_NEGATIVE, dec.to_json()
    return EXIT_OK, dec.to_json()


def cmd_invert(s: Session):
    return EXIT_OK, serialize.map_to_json(invert(s.map()))


def cmd_compose(s: Session):
    phi = s.map("", key="phi")
    psi = s.map("g", key="psi")
    return EXIT_OK, serialize.map_to_json(compose(phi, psi))


def cmd_is_coordinate(s: Session):
    got = coordinate_reduce(s.poly2("f"))
    if isinstance(got, (NotCoordinate, DepthExceeded)):
        return EXIT_NEGATIVE, got.to_json()
    return EXIT_OK, got.to_json()


def cmd_member(s: Session):
    sigma = validate(s.action())
    res = invariant_coordinate(sigma)
    got = membership(s.poly2("g"), res)
    out = {**got.to_json(), "f": str(res.f)}
    return (EXIT_OK if got else EXIT_NEGATIVE), out


def cmd_ic_form(s: Session):
    form = ic_form(s.poly2("f"))
    if form is None:
        return EXIT_NEGATIVE, {"kind": "NotICShaped"}
    return EXIT_OK, {"kind": "ICForm", **form.to_json()}


def cmd_leading_relation(s: Session):
    phi = s.map()
    rel = leading_relation_via_ic(phi) if s.args.via_ic else leading_relation(phi)
    if rel is None:
        return EXIT_NEGATIVE, {"kind": "NoRelation"}
    return EXIT_OK, {"kind": "LeadingRelation", **rel.to_json()}


def cmd_eval_action(s: Session):
    sigma = validate(s.action())
    return EXIT_OK, serialize.map_to_json(evaluate(sigma, s.poly2("t")))


def cmd_gen_corpus(s: Session):
    a = s.args
    cfg = GenConfig(
        seed=a.seed,
        field=s.spec,
        max_factors=a.max_factors,
        max_elementary_degree=a.max_elementary_degree,
        max_coefficient_height=a.max_coefficient_height,
        max_action_degree=a.max_action_degree,
    )
    kind = {"maps": "PlaneMap", "actions": "CoAction"}[a.kind]
    records = serialize.corpus_records(cfg, a.count, kind)
    if a.output:
        serialize.save_corpus(a.output, records)
        return EXIT_OK, {"kind": "Corpus", "path": a.output, "count": len(records)}
    return EXIT_OK, records


# -- argument parsing ----------------------------------------------------------

def _global_options(defaults: bool) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p.add_argument("--field", default=d(None), help='"q" or "fp:<p>" (default: from input, else q)')
    p.add_argument("--json", action="store_true", default=d(True), help="JSON output (the only format)")
    p.add_argument("--seed", type=int, default=d(0), help="seed for gen-corpus")
    p.add_argument("--dmax", type=int, default=d(24), help="degree cap for find-invariant")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="planeaut", parents=[_global_options(True)],
                             description="Plane polynomial automorphisms and Ga-actions.")
    sub = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)
    common = [_global_options(False)]

    def add(name, func, poly_flags, help_text):
        p = sub.add_parser(name, parents=common, help=help_text)
        for flag in poly_flags:
            p.add_argument("--" + flag.replace("_", "-"), dest=flag, default=None)
        p.set_defaults(func=func, poly_flags=tuple(poly_flags))
        return p

    add("validate-action", cmd_validate_action, ["s1", "s2"], "check the axioms (A1), (A2)")
    p = add("invariant", cmd_invariant, ["s1", "s2"], "invariant coordinate with trace")
    p.add_argument("--max-check-degree", type=int, default=4,
                   help="cross-check all invariants up to this degree (0 disables)")
    add("find-invariant", cmd_find_invariant, ["s1", "s2"], "least-degree invariant by linear algebra")
    add("decompose", cmd_decompose, ["f1", "f2"], "tame decomposition")
    add("invert", cmd_invert, ["f1", "f2"], "inverse automorphism")
    add("compose", cmd_compose, ["f1", "f2", "gf1", "gf2"], "phi o psi for phi=(f1,f2), psi=(gf1,gf2)")
    add("is-coordinate", cmd_is_coordinate, ["f"], "coordinate test with certificate")
    add("member", cmd_member, ["s1", "s2", "g"], "decide g in the invariant ring")
    add("ic-form", cmd_ic_form, ["f"], "leading form a(x_i - b x_j^l)^m")
    p = add("leading-relation", cmd_leading_relation, ["f1", "f2"], "top(f_i) = alpha top(f_j)^l")
    p.add_argument("--via-ic", action="store_true", help="derive the relation through the inverse map")
    add("eval-action", cmd_eval_action, ["s1", "s2", "t"], "the automorphism sigma_t")
    p = add("gen-corpus", cmd_gen_corpus, [], "seeded corpus of maps or actions")
    p.add_argument("--kind", choices=("maps", "actions"), default="maps")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--max-factors", type=int, default=3)
    p.add_argument("--max-elementary-degree", type=int, default=2)
    p.add_argument("--max-coefficient-height", type=int, default=3)
    p.add_argument("--max-action-degree", type=int, default=10)
    p.add_argument("--output", default=None, help="write the corpus here instead of stdout")
    return parser


def run(argv, stdin=None):
    """Execute one command; return ``(exit_code, json_payload)``."""
    stdin = stdin if stdin is not None else sys.stdin
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required")
        return args.func(Session(args, stdin))
    except StuckReduction as exc:
        logging.getLogger(__name__).error("falsification event: %s", exc)
        return EXIT_FALSIFIED, exc.payload()
    except NEGATIVE_ERRORS as exc:
        return EXIT_NEGATIVE, exc.payload()
    except PlaneAutError as exc:
        return EXIT_USAGE, exc.payload()
    except (KeyError, TypeError, ValueError) as exc:
        return EXIT_USAGE, {"kind": "UsageError", "message": str(exc)}


def main(argv=None) -> int:
    code, payload = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(serialize.dumps(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
