"""Command-line surface.

Every subcommand is a thin wrapper over one library operation.  Exit
codes: 0 success, 1 negative outcome (invalid, unsatisfiable, refuted,
failed check), 2 usage or input error, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import re
import sys

from . import jsonio, suites
from .decide import Refuted, TheoremWithinBound, Unknown, decide, preset
from .errors import CapacityExceeded, WorkbenchError
from .filtration import (
    check_filtration_lemma,
    largest_filtration,
    minimal_filtration,
    verify_filtration,
)
from .formula import AXIOM_NAMES, Formula, axiom, parse, print_formula, sub_closure
from .graph import (
    INFINITE,
    chromatic_number,
    frame_properties,
    is_connected,
    random_graph,
)
from .kripke import (
    DEFAULT_VALUATION_CAP,
    check,
    diff_expand,
    frame_satisfiable,
    frame_valid,
)
from .morphism import check_pmorphism, repair, repair_irreflexive
from .report import write_report

_SHORTHAND = re.compile(r"([A-Za-z][A-Za-z_-]*)(?::(\d+))?\Z")


def resolve_formula(text: str) -> Formula:
    """Accept either an axiom shorthand like CF:2 or CON, or formula text."""
    m = _SHORTHAND.match(text.strip())
    if m and m.group(1).upper().replace("-", "_") in AXIOM_NAMES:
        k = int(m.group(2)) if m.group(2) else None
        return axiom(m.group(1), k)
    return parse(text)


def _emit(doc, args) -> str:
    return jsonio.dumps(doc, canonical=getattr(args, "json", False))


def _load_frame(path):
    return jsonio.frame_from_doc(jsonio.load_file(path))


def _load_model(path):
    return jsonio.model_from_doc(jsonio.load_file(path))


def _gamma_of(args) -> frozenset:
    gamma = sub_closure(resolve_formula(t) for t in args.gamma)
    return gamma


def _psi_of(args, gamma):
    extra = [resolve_formula(t) for t in getattr(args, "psi", []) or []]
    return gamma | frozenset(extra)


# --- subcommand handlers, each returning (exit_code, stdout_text) ---

def _cmd_parse(args):
    return 0, print_formula(parse(args.formula))


def _cmd_print(args):
    return 0, print_formula(resolve_formula(args.formula))


def _cmd_gen(args):
    return 0, print_formula(axiom(args.name, args.k))


def _cmd_mc(args):
    m = _load_model(args.model)
    truth = check(m, args.point, resolve_formula(args.formula))
    if args.json:
        return (0 if truth else 1), _emit({"holds": truth}, args)
    return (0 if truth else 1), "true" if truth else "false"


def _cmd_valid(args):
    fr = _load_frame(args.frame)
    ok = frame_valid(fr, resolve_formula(args.formula), args.cap)
    if args.json:
        return (0 if ok else 1), _emit({"valid": ok}, args)
    return (0 if ok else 1), "valid" if ok else "not valid"


def _cmd_sat(args):
    fr = _load_frame(args.frame)
    witness = frame_satisfiable(fr, resolve_formula(args.formula), args.cap)
    if witness is None:
        return 1, "unsatisfiable" if not args.json else _emit({"satisfiable": False}, args)
    valuation, point = witness
    doc = {"satisfiable": True, "valuation": jsonio.valuation_to_doc(valuation), "point": point}
    return 0, _emit(doc, args)


def _cmd_chromatic(args):
    value = chromatic_number(_load_frame(args.frame))
    text = "infinite" if value == INFINITE else str(int(value))
    if args.json:
        return 0, _emit({"chromatic": "infinite" if value == INFINITE else int(value)}, args)
    return 0, text


def _cmd_connected(args):
    ok = is_connected(_load_frame(args.frame))
    if args.json:
        return (0 if ok else 1), _emit({"connected": ok}, args)
    return (0 if ok else 1), "connected" if ok else "not connected"


def _cmd_props(args):
    props = frame_properties(_load_frame(args.frame))
    doc = {
        "symmetric": props.symmetric,
        "irreflexive": props.irreflexive,
        "serial": props.serial,
    }
    if args.json:
        return 0, _emit(doc, args)
    return 0, "\n".join(f"{k}: {str(v).lower()}" for k, v in doc.items())


def _cmd_filtrate(args):
    m = _load_model(args.model)
    gamma = _gamma_of(args)
    psi = _psi_of(args, gamma)
    build = minimal_filtration if args.kind == "minimal" else largest_filtration
    res = build(m, gamma, psi)
    return 0, _emit(jsonio.filtration_to_doc(res), args)


def _cmd_verify_filtration(args):
    m = _load_model(args.model)
    gamma = _gamma_of(args)
    psi = _psi_of(args, gamma)
    candidate = jsonio.filtration_from_doc(jsonio.load_file(args.candidate), gamma, psi)
    ok = verify_filtration(m, candidate)
    if args.json:
        return (0 if ok else 1), _emit({"filtration": ok}, args)
    return (0 if ok else 1), "filtration" if ok else "not a filtration"


def _cmd_check_lemma(args):
    m = _load_model(args.model)
    gamma = _gamma_of(args)
    psi = _psi_of(args, gamma)
    builds = {
        "minimal": [minimal_filtration],
        "largest": [largest_filtration],
        "both": [minimal_filtration, largest_filtration],
    }[args.kind]
    ok = True
    for build in builds:
        res = build(m, gamma, psi)
        if args.which == "truth":
            ok = verify_filtration(m, res) and check_filtration_lemma(m, res)
        elif args.which == "chromatic":
            if args.k is None:
                raise WorkbenchError("--which chromatic requires --k")
            ok = chromatic_number(res.quotient_model.frame) > args.k
        else:
            ok = is_connected(res.quotient_model.frame)
        if not ok:
            break
    if args.json:
        return (0 if ok else 1), _emit({"holds": ok}, args)
    return (0 if ok else 1), "holds" if ok else "fails"


def _cmd_repair(args):
    fr = _load_frame(args.frame)
    if args.irreflexive:
        if args.k is None:
            raise WorkbenchError("--irreflexive requires --k")
        repaired, mapping = repair_irreflexive(fr, args.k)
    else:
        repaired, mapping = repair(fr)
    doc = {"frame": jsonio.frame_to_doc(repaired), "map": dict(sorted(mapping.items()))}
    return 0, _emit(doc, args)


def _cmd_pmorphism(args):
    src = _load_frame(args.src)
    dst = _load_frame(args.dst)
    mapping = jsonio.load_file(args.map)
    ok = check_pmorphism(src, dst, mapping)
    if args.json:
        return (0 if ok else 1), _emit({"pmorphism": ok}, args)
    return (0 if ok else 1), "p-morphism" if ok else "not a p-morphism"


def _cmd_decide(args):
    verdict = decide(
        resolve_formula(args.formula),
        preset(args.preset, args.k),
        args.max_size,
        args.val_cap,
        dedup_isomorphic=not args.no_dedup,
    )
    doc = jsonio.verdict_to_doc(verdict)
    if isinstance(verdict, Refuted):
        code = 1
    elif isinstance(verdict, TheoremWithinBound):
        code = 0
    else:
        code = 3
    text = _emit(doc, args)
    if not args.json and isinstance(verdict, TheoremWithinBound) and verdict.note:
        text += f"\nnote: {verdict.note}"
    return code, text


def _cmd_random_graph(args):
    fr = random_graph(args.n, args.edge_prob, args.seed, args.directed)
    if args.diff:
        fr = diff_expand(fr)
    return 0, _emit(jsonio.frame_to_doc(fr), args)


def _cmd_proptest(args):
    names = sorted(suites.SUITES) if args.suite == "all" else [args.suite]
    results = []
    lines = []
    for name in names:
        res = suites.run_suite(name, args.trials, args.seed)
        results.append(res)
        status = "pass" if res.passed else f"FAIL ({res.failures} failures)"
        lines.append(f"{name}: {status} (trials={res.trials}, {res.elapsed_s:.1f}s)")
    if args.report_dir:
        for path in write_report(results, args.report_dir):
            lines.append(f"wrote {path}")
    code = 0 if all(r.passed for r in results) else 1
    return code, "\n".join(lines)


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="diffmodal",
        description="workbench for bimodal logics with an inequality modality",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, handler, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(handler=handler)
        p.add_argument("--json", action="store_true", help="canonical JSON output")
        return p

    p = add("parse", _cmd_parse, "parse formula text, print the canonical form")
    p.add_argument("formula")

    p = add("print", _cmd_print, "canonical form of a formula or axiom shorthand")
    p.add_argument("formula")

    p = add("gen", _cmd_gen, "generate a named axiom")
    p.add_argument("name", help=f"one of {', '.join(AXIOM_NAMES)}")
    p.add_argument("--k", type=int, default=None)

    p = add("mc", _cmd_mc, "model-check a formula at a point")
    p.add_argument("--model", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--formula", required=True)

    for name, handler, help_ in (
        ("valid", _cmd_valid, "frame validity by valuation sweep"),
        ("sat", _cmd_sat, "least satisfying valuation and point, if any"),
    ):
        p = add(name, handler, help_)
        p.add_argument("--frame", required=True)
        p.add_argument("--formula", required=True)
        p.add_argument("--cap", type=int, default=DEFAULT_VALUATION_CAP)

    for name, handler, help_ in (
        ("chromatic", _cmd_chromatic, "least proper partition size, or infinite"),
        ("connected", _cmd_connected, "undirected reachability over R"),
        ("props", _cmd_props, "symmetric / irreflexive / serial"),
    ):
        p = add(name, handler, help_)
        p.add_argument("--frame", required=True)

    p = add("filtrate", _cmd_filtrate, "quotient a model by agreement on formulas")
    p.add_argument("--model", required=True)
    p.add_argument("--kind", choices=("minimal", "largest"), default="minimal")
    p.add_argument("--gamma", action="append", required=True,
                   help="formula (repeatable); closed under subformulas")
    p.add_argument("--psi", action="append", default=[],
                   help="extra formulas refining the quotient equivalence")

    p = add("verify-filtration", _cmd_verify_filtration, "check a candidate quotient")
    p.add_argument("--model", required=True)
    p.add_argument("--candidate", required=True)
    p.add_argument("--gamma", action="append", required=True)
    p.add_argument("--psi", action="append", default=[])

    p = add("check-lemma", _cmd_check_lemma,
            "truth preservation, chromatic excess, or connectivity of quotients")
    p.add_argument("--model", required=True)
    p.add_argument("--which", choices=("truth", "chromatic", "connectivity"),
                   default="truth")
    p.add_argument("--gamma", action="append", required=True)
    p.add_argument("--psi", action="append", default=[])
    p.add_argument("--kind", choices=("minimal", "largest", "both"), default="both")
    p.add_argument("--k", type=int, default=None)

    p = add("repair", _cmd_repair, "duplicate D-reflexive points; D becomes inequality")
    p.add_argument("--frame", required=True)
    p.add_argument("--irreflexive", action="store_true")
    p.add_argument("--k", type=int, default=None)

    p = add("pmorphism", _cmd_pmorphism, "verify a point map is a p-morphism")
    p.add_argument("--src", required=True)
    p.add_argument("--dst", required=True)
    p.add_argument("--map", required=True)

    p = add("decide", _cmd_decide, "bounded countermodel search in a preset class")
    p.add_argument("--formula", required=True)
    p.add_argument("--preset", required=True,
                   help="kdiff-cf, kbdiff-cf, kbdiff-con, kbdiff-cf-con, hn-lower")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--val-cap", type=int, default=DEFAULT_VALUATION_CAP)
    p.add_argument("--no-dedup", action="store_true",
                   help="keep isomorphic duplicates in the enumeration")

    p = add("random-graph", _cmd_random_graph, "seeded random loop-free frame")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--edge-prob", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--directed", action="store_true")
    p.add_argument("--diff", action="store_true",
                   help="attach the inequality relation as D")

    p = add("proptest", _cmd_proptest, "run the randomized property suites")
    p.add_argument("--suite", default="all",
                   help=f"all or one of: {', '.join(sorted(suites.SUITES))}")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--report-dir", default=None,
                   help="write results.csv and summary figures here")

    return top


def run(argv: list[str]) -> tuple[int, str]:
    """Execute one subcommand; returns (exit_code, stdout_text)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse has already written its diagnostic to stderr
        return (exc.code if exc.code in (0, 2) else 2), ""
    try:
        return args.handler(args)
    except CapacityExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3, ""
    except (WorkbenchError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, ""


def main() -> None:
    code, text = run(sys.argv[1:])
    if text:
        print(text)
    raise SystemExit(code)


if __name__ == "__main__":
    main()
