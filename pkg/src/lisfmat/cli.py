"""Command line front end.

Exit codes: 0 success, 1 a random suite had failures, 2 input or parameter
error, 3 LISF budget exceeded, 4 hypotheses not met.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import instance, suites
from .constructions import (
    direction_matrix,
    example2_disk_checks,
    example2_family,
    example3_family,
    example3_region_checks,
    lisf_matroid,
    theorem3_hypotheses,
)
from .errors import (
    BudgetExceeded,
    GroundTooLarge,
    HypothesesNotMet,
    LisfError,
    ParamError,
    ParseError,
)
from .exactalg import FieldSpec
from .matroid import (
    check_axioms,
    exhaustive_max_weight,
    greedy_max_weight,
    summarize,
    verify_axiom_witnesses,
    vector_matroid,
)
from .setfamily import DEFAULT_BUDGET, is_lisf, is_lisf_sampled, verify_witness

EXIT_OK, EXIT_SUITE_FAILED, EXIT_INPUT, EXIT_BUDGET, EXIT_HYPOTHESES = 0, 1, 2, 3, 4


def fmt_set(labels) -> str:
    return "{" + ",".join(map(str, labels)) + "}" if labels else "∅"


def fmt_family(fam) -> str:
    return "{" + ", ".join(fmt_set(s) for s in fam.sets()) + "}"


def _vec(field: FieldSpec, v) -> list:
    return [str(field.format_scalar(c)) for c in v.coords]


def _witness_doc(field, w) -> dict:
    return {
        "selection": [_vec(field, v) for v in w.selection],
        "coefficients": [str(field.format_scalar(c)) for c in w.coefficients],
    }


def _witness_lines(field, w) -> list[str]:
    out = []
    for i, (v, c) in enumerate(zip(w.selection, w.coefficients), 1):
        out.append(f"  set {i}: {v} * {field.format_scalar(c)}")
    return out


def _axiom_lines(rep) -> list[str]:
    parts = ["I.1 OK" if rep.i1_holds else "I.1 VIOLATED (empty set missing)"]
    if rep.i2_holds:
        parts.append("I.2 OK")
    else:
        big, small = rep.i2_witness
        parts.append(f"I.2 VIOLATED witness ({fmt_set(big)},{fmt_set(small)})")
    if rep.i3_holds:
        parts.append("I.3 OK")
    else:
        a, b = rep.i3_witness
        parts.append(f"I.3 VIOLATED witness ({fmt_set(a)},{fmt_set(b)})")
    return ["axioms: " + ", ".join(parts), f"MATROID: {'yes' if rep.is_matroid else 'no'}"]


def _axiom_doc(rep) -> dict:
    return {
        "I1": rep.i1_holds,
        "I2": rep.i2_holds,
        "I2_witness": [list(s) for s in rep.i2_witness] if rep.i2_witness else None,
        "I3": rep.i3_holds,
        "I3_witness": [list(s) for s in rep.i3_witness] if rep.i3_witness else None,
        "is_matroid": rep.is_matroid,
    }


def _checked_axioms(fam):
    rep = check_axioms(fam)
    if not verify_axiom_witnesses(fam, rep):
        raise RuntimeError("axiom witness failed re-verification")
    return rep


def _pipeline(family, args, report: dict, lines: list[str]) -> int:
    ind = lisf_matroid(family, args.budget)
    lines.append(f"family: {fmt_family(ind)}")
    report["families"]["independent_sets"] = [list(s) for s in ind.sets()]
    if args.verify_axioms:
        rep = _checked_axioms(ind)
        lines.extend(_axiom_lines(rep))
        report["verdicts"]["axioms"] = _axiom_doc(rep)
    if args.summary:
        try:
            summ = summarize(ind)
        except LisfError as exc:
            lines.append(f"summary: unavailable ({exc})")
        else:
            lines.append(f"rank: {summ.rank}")
            lines.append("bases: " + ", ".join(fmt_set(b) for b in summ.bases))
            lines.append("circuits: " + (", ".join(fmt_set(c) for c in summ.circuits) or "none"))
            report["families"]["bases"] = [list(b) for b in summ.bases]
            report["families"]["circuits"] = [list(c) for c in summ.circuits]
            report["verdicts"]["rank"] = summ.rank
    if getattr(args, "oracle", False):
        hyp = theorem3_hypotheses(family)
        if not hyp.satisfied:
            raise HypothesesNotMet(f"oracle needs every set on one line; failures: {hyp.reasons()}")
        equal = vector_matroid(direction_matrix(family)) == ind
        lines.append(f"ORACLE: {'EQUAL' if equal else 'UNEQUAL'}")
        report["verdicts"]["oracle_equal"] = equal
    return EXIT_OK


def cmd_check_lisf(args, report, lines) -> int:
    family, _ = instance.load(args.file)
    lines.append(f"field: {family.field}  ambient_dim: {family.ambient_dim}  sets: {len(family)}")
    verdict = is_lisf(family.sets, args.budget)
    lines.append(f"verdict: {'LISF' if verdict.is_lisf else 'NOT LISF'}")
    report["verdicts"]["is_lisf"] = verdict.is_lisf
    if verdict.witness is not None:
        if not verify_witness(family.sets, verdict.witness):
            raise RuntimeError("LISF witness failed re-verification")
        lines.append("witness (verified):")
        lines.extend(_witness_lines(family.field, verdict.witness))
        report["witnesses"].append(_witness_doc(family.field, verdict.witness))
    if args.sampled:
        trials, seed = args.sampled
        s = is_lisf_sampled(family.sets, trials, seed)
        if s.witness is not None:
            if not verify_witness(family.sets, s.witness):
                raise RuntimeError("sampled witness failed re-verification")
            found = f"DEPENDENCE FOUND after {s.trials} trial(s)"
        else:
            found = f"no dependence found in {s.trials} trial(s)"
        mode = "exhaustive" if s.exhaustive else "random"
        if s.is_lisf is None:
            agree = "AGREE" if verdict.is_lisf else "INCONCLUSIVE"
        else:
            agree = "AGREE" if s.is_lisf == verdict.is_lisf else "DISAGREE"
        lines.append(f"sampled: {found} ({mode}) -- {agree}")
        report["verdicts"]["sampled"] = {
            "dependence_found": s.dependence_found,
            "trials": s.trials,
            "exhaustive": s.exhaustive,
            "agreement": agree,
        }
        if s.witness is not None:
            report["witnesses"].append(_witness_doc(family.field, s.witness))
    return EXIT_OK


def cmd_build_matroid(args, report, lines) -> int:
    family, _ = instance.load(args.file)
    return _pipeline(family, args, report, lines)


EXAMPLES = {
    "ex2": (example2_family, example2_disk_checks),
    "ex3": (example3_family, example3_region_checks),
}


def cmd_example(args, report, lines) -> int:
    make, checks = EXAMPLES[args.name]
    family = make()
    text = instance.dumps(family)
    if args.emit_instance:
        with open(args.emit_instance, "w", encoding="utf-8") as fh:
            fh.write(text)
    lines.append("instance:")
    lines.extend(text.rstrip("\n").splitlines())
    lines.append("sample checks:")
    ok_all = True
    docs = []
    for c in checks(family):
        ok_all &= c.holds
        lines.append(f"  E{c.label} {c.point}: {c.description} -- {'OK' if c.holds else 'FAIL'}")
        docs.append({"label": c.label, "point": _vec(family.field, c.point), "check": c.description, "holds": c.holds})
    report["verdicts"]["sample_checks"] = docs
    report["verdicts"]["sample_checks_pass"] = ok_all
    args.verify_axioms = args.summary = True
    return _pipeline(family, args, report, lines)


def cmd_random_suite(args, report, lines) -> int:
    field = FieldSpec.parse(args.field) if args.field else None
    kind = args.kind
    if kind == "t3":
        res = suites.run_t3(args.seed, args.count, args.n, args.l, field)
    elif kind == "t4":
        if field is not None and field.characteristic != 0:
            raise ParamError("the t4 suite works over Q only")
        dim_n = args.dim_n if args.dim_n is not None else args.n
        if dim_n is not None and args.k is not None and args.l is not None and args.k * dim_n > args.l:
            raise ParamError(f"k*n = {args.k * dim_n} exceeds l = {args.l}")
        res = suites.run_t4(args.seed, args.count, args.k, dim_n, args.m, args.l)
    elif kind == "corollaries":
        res = suites.run_corollaries(args.seed, args.count, args.n, args.l, field)
    else:
        res = suites.run_oracle(args.seed, args.count)
    lines.append(f"{kind}: {res.summary()}")
    report["verdicts"]["suite"] = {
        "kind": kind,
        "count": res.count,
        "passed": dict(res.passed),
        "checked": dict(res.applicable),
        "all_passed": res.ok,
    }
    if res.failures:
        paths = suites.dump_failures(res, args.seed, args.dump_dir)
        lines.append(f"FAILED: {len(res.failures)} check(s); instances written:")
        lines.extend(f"  {p}" for p in paths)
        report["verdicts"]["suite"]["failure_files"] = paths
        return EXIT_SUITE_FAILED
    lines.append("all checks passed")
    return EXIT_OK


def _parse_weights(text: str) -> list[Fraction]:
    try:
        ws = [Fraction(x.strip()) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad weight list {text!r}") from None
    if any(w < 0 for w in ws):
        raise ParseError("weights must be non-negative")
    return ws


def cmd_greedy(args, report, lines) -> int:
    family, _ = instance.load(args.file)
    ws = _parse_weights(args.weights)
    if len(ws) != len(family):
        raise ParseError(f"{len(ws)} weights given for {len(family)} sets")
    ind = lisf_matroid(family, args.budget)
    g_set, g_tot = greedy_max_weight(ind, ws)
    e_set, e_tot = exhaustive_max_weight(ind, ws)
    agree = g_tot == e_tot
    lines.append(f"family: {fmt_family(ind)}")
    lines.append(f"greedy: {fmt_set(g_set)} total {g_tot}")
    lines.append(f"exhaustive: {fmt_set(e_set)} total {e_tot}")
    lines.append("AGREE" if agree else "DISAGREE")
    report["families"]["independent_sets"] = [list(s) for s in ind.sets()]
    report["verdicts"]["greedy"] = {"set": list(g_set), "total": str(g_tot)}
    report["verdicts"]["exhaustive"] = {"set": list(e_set), "total": str(e_tot)}
    report["verdicts"]["agree"] = agree
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--emit-report", metavar="PATH", help="write a JSON report to PATH")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max direction tuples per LISF decision")

    p = argparse.ArgumentParser(prog="lisfmat", description="Matroids from linearly independent set families.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-lisf", parents=[common], help="decide whether a family is a LISF")
    s.add_argument("file")
    s.add_argument("--sampled", nargs=2, type=int, metavar=("TRIALS", "SEED"), help="also run the sampling oracle")
    s.set_defaults(func=cmd_check_lisf)

    s = sub.add_parser("build-matroid", parents=[common], help="build the independence system of a family")
    s.add_argument("file")
    s.add_argument("--verify-axioms", action="store_true")
    s.add_argument("--summary", action="store_true", help="rank, bases and circuits")
    s.add_argument("--oracle", action="store_true", help="compare with the column matroid of the direction matrix")
    s.set_defaults(func=cmd_build_matroid)

    s = sub.add_parser("example", parents=[common], help="reproduce one of the two non-matroid families")
    s.add_argument("name", choices=sorted(EXAMPLES))
    s.add_argument("--emit-instance", metavar="PATH", help="also write the instance file")
    s.set_defaults(func=cmd_example)

    s = sub.add_parser("random-suite", parents=[common], help="run a randomized property suite")
    s.add_argument("kind", choices=suites.KINDS)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--n", type=int, help="number of sets (t3, corollaries) or summand dimension (t4)")
    s.add_argument("--l", type=int, help="ambient dimension")
    s.add_argument("--k", type=int, help="number of summands (t4)")
    s.add_argument("--dim-n", type=int, help="summand dimension (t4); overrides --n")
    s.add_argument("--m", type=int, help="number of sets (t4)")
    s.add_argument("--field", help="'Q' or 'GF(p)'; random per instance when omitted")
    s.add_argument("--dump-dir", default="suite-failures", help="where failing instances are written")
    s.set_defaults(func=cmd_random_suite)

    s = sub.add_parser("greedy", parents=[common], help="compare greedy and exhaustive max-weight sets")
    s.add_argument("file")
    s.add_argument("--weights", required=True, help="comma-separated non-negative rationals")
    s.set_defaults(func=cmd_greedy)
    return p


def run(argv) -> tuple[int, str, dict]:
    """Run a command; returns ``(exit_code, text, report)`` without printing."""
    args = build_parser().parse_args(argv)
    report = {"command": list(argv), "verdicts": {}, "families": {}, "witnesses": []}
    lines: list[str] = []
    t0 = time.perf_counter()
    try:
        code = args.func(args, report, lines)
    except BudgetExceeded as exc:
        code = EXIT_BUDGET
        lines.append(f"error: {exc}; offending subset {fmt_set(exc.labels or ())}")
        report["error"] = {"kind": "BudgetExceeded", "message": str(exc), "labels": exc.labels}
    except HypothesesNotMet as exc:
        code = EXIT_HYPOTHESES
        lines.append(f"error: hypotheses not met: {exc}")
        report["error"] = {"kind": "HypothesesNotMet", "message": str(exc)}
    except (ParseError, ParamError, GroundTooLarge, OSError, ValueError) as exc:
        code = EXIT_INPUT
        lines.append(f"error: {exc}")
        report["error"] = {"kind": type(exc).__name__, "message": str(exc)}
    report["exit_code"] = code
    report["timing"] = {"seconds": round(time.perf_counter() - t0, 6)}
    if args.emit_report:
        with open(args.emit_report, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True, ensure_ascii=False)
            fh.write("\n")
    return code, "\n".join(lines) + "\n", report


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, text, _ = run(argv)
    stream = sys.stdout if code in (EXIT_OK, EXIT_SUITE_FAILED) else sys.stderr
    stream.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
