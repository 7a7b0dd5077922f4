"""Command-line front end.

Exit status is 0 when everything is consistent and 2 when two independent
tests disagree.  Usage errors, a zero coefficient among them, give 1.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .classifier import (
    CSV_COLUMNS, Condition, classify, enumerate_pp_pairs, pairs_to_csv,
)
from .curve import SplitType, count_points_off_diagonal, gamma_coeffs, split_analysis
from .errors import ParseError, PermTriError, ResourceLimit
from .fields import ExtCtx, Fq2, make_tower, parse_hex
from .sweep import default_workers
from .trinomial import PairAB, has_mu_pole, is_perm_mu, is_pp_bruteforce

EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2

DEFAULT_BUDGET = 2 * 10 ** 9
# rough per-pair work of each enumeration mode, in field operations
_MODE_COST = {"bruteforce": lambda q: q * q, "mu": lambda q: q + 1, "condition": lambda q: 1}


def work_budget() -> int:
    raw = os.environ.get("PERMTRI_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(float(raw))
    except ValueError:
        raise ParseError(f"PERMTRI_BUDGET must be a number, got {raw!r}") from None


def check_budget(q: int, modes) -> int:
    pairs = (q * q - 1) ** 2
    work = sum(pairs * _MODE_COST[mode](q) for mode in modes)
    budget = work_budget()
    if work > budget:
        raise ResourceLimit(f"estimated {work:.3g} operations exceed the budget {budget:.3g};"
                            " raise PERMTRI_BUDGET to run anyway")
    return work


def _ext(args) -> ExtCtx:
    modulus = None if args.modulus is None else parse_hex(args.modulus)
    k = None if args.k is None else parse_hex(args.k)
    return make_tower(args.m, modulus, k)


def _element(ext: ExtCtx, text: str, name: str) -> Fq2:
    if text is None:
        raise ParseError(f"--{name} is required")
    z = Fq2.parse(text)
    if z.a >= ext.q or z.b >= ext.q:
        raise ParseError(f"--{name} {text}: coordinates must be below {ext.q:#x}")
    return z


def _pair(ext: ExtCtx, args) -> PairAB:
    return PairAB(_element(ext, args.alpha, "alpha"), _element(ext, args.beta, "beta"))


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _verdict(ok: bool) -> str:
    return "permutation" if ok else "not a permutation"


# -- subcommands -------------------------------------------------------------

def cmd_verify_pair(args) -> int:
    ext = _ext(args)
    pair = _pair(ext, args)
    A, B, C, D = pair.coords
    tag, case_id = classify(ext, pair)
    mu = is_perm_mu(ext, pair)
    brute = is_pp_bruteforce(ext, pair)
    split = split_analysis(ext, A, B, C, D)
    points = count_points_off_diagonal(ext.base, gamma_coeffs(ext, A, B, C, D))
    pole = has_mu_pole(ext, pair)
    nonrational = split.split_type is SplitType.NOT_SPLIT_NONRATIONAL

    problems = []
    if brute != mu:
        problems.append("brute force and the norm-one test disagree")
    if (tag is not Condition.NONE) != mu:
        problems.append("trace conditions disagree with the permutation test")
    if nonrational != (tag is not Condition.NONE):
        problems.append("split analysis disagrees with the trace conditions")
    if nonrational and split.case_id != case_id:
        problems.append("split analysis reports a different case")
    if not pole and mu != (points == 0):
        problems.append("point count disagrees with the permutation test")
    if pole and (mu or points == 0):
        problems.append("a pole on the norm-one group should rule out a permutation")

    report = {
        "q": ext.q,
        "modulus": hex(ext.base.modulus),
        "k": hex(ext.k),
        "alpha": str(pair.alpha),
        "beta": str(pair.beta),
        "verdicts": {
            "bruteforce": _verdict(brute),
            "mu": _verdict(mu),
            "condition": _verdict(tag is not Condition.NONE),
            "split": _verdict(nonrational),
            "curve": _verdict(points == 0 and not pole),
        },
        "condition": tag.value,
        "case_id": case_id,
        "split": split.as_dict(),
        "points_off_diagonal": points,
        "mu_pole": pole,
        "consistent": not problems,
        "problems": problems,
    }
    _emit(_dump(report), args.out)
    return EXIT_OK if not problems else EXIT_INCONSISTENT


def cmd_enumerate(args) -> int:
    ext = _ext(args)
    reference = "mu" if args.mode == "condition" else "condition"
    check_budget(ext.q, {args.mode, reference})
    workers = args.workers or default_workers()
    found = enumerate_pp_pairs(ext, args.mode, workers)
    expected = enumerate_pp_pairs(ext, reference, workers)
    tags = {p: classify(ext, p) for p in found | expected}
    summary = {
        "q": ext.q,
        "mode": args.mode,
        "reference_mode": reference,
        "total_pairs_checked": (ext.q * ext.q - 1) ** 2,
        "pp_count": len(found),
        "cond1_count": sum(1 for p in expected | found if tags[p][0] is Condition.COND1),
        "cond2_count": sum(1 for p in expected | found if tags[p][0] is Condition.COND2),
        "mismatches": len(found ^ expected),
    }
    if args.format == "csv":
        _emit(pairs_to_csv(ext, found), args.out)
        sys.stderr.write(_dump(summary) + "\n")
    else:
        rows = []
        for p in sorted(found):
            tag, case = tags[p]
            rows.append(dict(zip(CSV_COLUMNS, (ext.q, hex(p.alpha.a), hex(p.alpha.b), hex(p.beta.a),
                                               hex(p.beta.b), tag.value, case))))
        _emit(_dump({"summary": summary, "pairs": rows}), args.out)
    return EXIT_OK if summary["mismatches"] == 0 else EXIT_INCONSISTENT


def cmd_curve_points(args) -> int:
    ext = _ext(args)
    pair = _pair(ext, args)
    coeffs = gamma_coeffs(ext, *pair.coords)
    report = {
        "q": ext.q,
        "alpha": str(pair.alpha),
        "beta": str(pair.beta),
        "gamma": {f"g{j}{l}": hex(v) for (j, l), v in sorted(coeffs.gamma.items(), reverse=True)},
        "points_off_diagonal": count_points_off_diagonal(ext.base, coeffs),
        "mu_pole": has_mu_pole(ext, pair),
    }
    _emit(_dump(report), args.out)
    return EXIT_OK


def cmd_split(args) -> int:
    ext = _ext(args)
    pair = _pair(ext, args)
    report = split_analysis(ext, *pair.coords).as_dict()
    report.update(q=ext.q, alpha=str(pair.alpha), beta=str(pair.beta))
    _emit(_dump(report), args.out)
    return EXIT_OK


SUITES = ("curve", "conics", "chains", "all")


def run_suite(suite: str):
    from .symbolic import curve_polynomial, verify_case_chains, verify_curve, verify_two_conics_obstruction
    reports = []
    if suite in ("curve", "all"):
        reports.append(verify_curve())
    if suite in ("conics", "chains", "all"):
        L = curve_polynomial()
        if suite in ("conics", "all"):
            reports.append(verify_two_conics_obstruction(L))
        if suite in ("chains", "all"):
            reports.extend(verify_case_chains(L))
    return reports


def cmd_symbolic(args) -> int:
    reports = run_suite(args.suite)
    if args.out and Path(args.out).suffix != ".json":
        folder = Path(args.out)
        folder.mkdir(parents=True, exist_ok=True)
        for rep in reports:
            (folder / f"{rep.name}.json").write_text(rep.to_json() + "\n")
        summary = {rep.name: rep.verdict for rep in reports}
        sys.stdout.write(_dump(summary) + "\n")
    else:
        _emit(_dump([rep.as_dict() for rep in reports]), args.out)
    return EXIT_OK if all(rep.passed for rep in reports) else EXIT_INCONSISTENT


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permtri",
        description="Check the trinomial x + a x^(q(q-1)+1) + b x^(2(q-1)+1) over GF(q^2), q = 2^m.")
    sub = parser.add_subparsers(dest="command", required=True)

    field = argparse.ArgumentParser(add_help=False)
    field.add_argument("--m", type=int, required=True, help="q = 2^m")
    field.add_argument("--modulus", help="irreducible polynomial for GF(q), as hex bits")
    field.add_argument("--k", help="trace-one element defining i^2 = i + k, hex")
    field.add_argument("--out", help="write the artifact here instead of stdout")

    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("--alpha", required=True, help="alpha as HEX:HEX (a + i b)")
    pair.add_argument("--beta", required=True, help="beta as HEX:HEX")

    p = sub.add_parser("verify-pair", parents=[field, pair], help="run every test on one pair")
    p.set_defaults(func=cmd_verify_pair)

    p = sub.add_parser("enumerate", parents=[field], help="exhaustive sweep over all pairs")
    p.add_argument("--mode", choices=("bruteforce", "mu", "condition"), default="mu")
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: all CPUs)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("curve-points", parents=[field, pair], help="count points of L off x = y")
    p.set_defaults(func=cmd_curve_points)

    p = sub.add_parser("split", parents=[field, pair], help="splitting type of the curve L")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("symbolic", help="re-run the symbolic derivations")
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--out", help="a .json file, or a directory for one report per derivation")
    p.set_defaults(func=cmd_symbolic)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except PermTriError as exc:
        sys.stderr.write(f"permtri: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
