"""Command-line front end.

Exit status: 0 success, 1 failed verification, 2 usage or capacity error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from .coefficients import (
    CapacityError,
    Caps,
    ce_mod2_identity_check,
    co1_mod2_identity_check,
    co1_parity_check,
    co1_prime_even_check,
    coefficient_table,
)
from .distribution import (
    conjecture_profile,
    residue_histogram,
    verify_cong_identity,
    verify_gap_sequence,
    verify_theorem1,
    verify_theorem2_windows,
)
from .enumerator import enumerate_compositions
from .family import CompositionFamily
from .report import VerificationReport
from .series import CoefficientRing
from .verify import oracle_equivalence_check, parity_involution_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

CHECKS = (
    "oracle",
    "parity",
    "ce-mod2",
    "co1-mod2",
    "co1-parity",
    "co1p-even",
    "cong",
    "theorem1",
    "theorem2",
    "gap",
)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# output helpers


def _plain_number(x: float) -> str:
    if x != x or x in (float("inf"), float("-inf")):
        return json.dumps(x)
    return np.format_float_positional(x, trim="-")


def _jsonable(obj, floats):
    if isinstance(obj, VerificationReport):
        obj = obj.to_dict()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v, floats) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v, floats) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        floats.append(float(obj))
        return f"@@float{len(floats) - 1}@@"
    if hasattr(obj, "__dataclass_fields__"):
        return _jsonable(vars(obj), floats)
    if hasattr(obj, "value"):
        return obj.value
    return obj


def dumps_json(obj) -> str:
    """JSON with floats in positional notation (no exponents)."""
    floats: list[float] = []
    text = json.dumps(_jsonable(obj, floats), indent=2, sort_keys=False)
    for i, x in enumerate(floats):
        text = text.replace(f'"@@float{i}@@"', _plain_number(x), 1)
    return text + "\n"


def dumps_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _resolve_output(path: str | None) -> str | None:
    if path is None:
        return None
    out_dir = os.environ.get("CONCOMP_OUT")
    if out_dir and not os.path.isabs(path):
        os.makedirs(out_dir, exist_ok=True)
        path = os.path.join(out_dir, path)
    return path


def _emit(text: str, path: str | None):
    path = _resolve_output(path)
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# commands


def _caps(args) -> Caps:
    return Caps(exact_max=args.exact_max, mod_max=args.mod_max)


def _family(name):
    try:
        return CompositionFamily.parse(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_coeffs(args) -> int:
    family = _family(args.family)
    ring = CoefficientRing.exact() if args.mod is None else CoefficientRing.mod(args.mod)
    table = coefficient_table(family, ring, args.limit, _caps(args))
    rows = [(n, int(v)) for n, v in enumerate(table.values)]
    if args.format == "json":
        payload = {"family": family.value, "modulus": args.mod, "limit": args.limit, "values": [v for _, v in rows]}
        _emit(dumps_json(payload), args.output)
    else:
        _emit(dumps_csv(["n", "value"], rows), args.output)
    return EXIT_OK


def cmd_enumerate(args) -> int:
    family = _family(args.family)
    comps = enumerate_compositions(family, args.n)
    if args.format == "json":
        payload = {
            "family": family.value,
            "n": args.n,
            "compositions": [list(c.parts) for c in comps],
            "count": len(comps),
        }
        _emit(dumps_json(payload), args.output)
    else:
        lines = [",".join(str(p) for p in c.parts) for c in comps]
        lines.append(f"count={len(comps)}")
        _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_histogram(args) -> int:
    family = _family(args.family)
    hist = residue_histogram(family, args.mod, args.limit, _caps(args))
    if args.format == "json":
        payload = {"family": family.value, "modulus": args.mod, "limit": args.limit, "counts": list(hist.counts)}
        _emit(dumps_json(payload), args.output)
    else:
        _emit(dumps_csv(["r", "count"], enumerate(hist.counts)), args.output)
    return EXIT_OK


def _theorem2_report(args, family) -> VerificationReport:
    if args.mod is None:
        raise UsageError("theorem2 needs --mod")
    residues = range(args.mod) if args.residue is None else [args.residue]
    witnesses, passed = [], True
    for r in residues:
        rep = verify_theorem2_windows(family, args.mod, r, args.m_max, window=args.window, caps=_caps(args))
        passed &= rep.passed
        witnesses += rep.discrepancies
    return VerificationReport(
        "theorem2-windows",
        passed=passed,
        parameters={
            "family": family.value,
            "modulus": args.mod,
            "residues": list(residues),
            "m_max": args.m_max,
            "window": args.window,
        },
        witnesses=witnesses,
    )


def _run_check(args) -> VerificationReport:
    check = args.check
    limit = args.limit
    if check == "oracle":
        return oracle_equivalence_check(limit if limit is not None else 30)
    if check == "parity":
        return parity_involution_check(limit if limit is not None else 20)
    if check == "ce-mod2":
        return ce_mod2_identity_check(limit if limit is not None else 10**5)
    if check == "co1-mod2":
        return co1_mod2_identity_check(limit if limit is not None else 10**5)
    if check == "co1-parity":
        return co1_parity_check(limit if limit is not None else 10**5)
    if check == "co1p-even":
        return co1_prime_even_check(limit if limit is not None else 10**5)
    if check == "cong":
        return verify_cong_identity(_family(args.family or "ce"), args.m_max, caps=_caps(args))
    if check == "theorem1":
        if args.part is None:
            raise UsageError("theorem1 needs --part")
        return verify_theorem1(args.part, limit if limit is not None else 10**4, args.epsilon, caps=_caps(args))
    if check == "theorem2":
        return _theorem2_report(args, _family(args.family or "ce"))
    if check == "gap":
        return verify_gap_sequence(args.j_max)
    raise UsageError(f"unknown check {check!r}")


def cmd_verify(args) -> int:
    try:
        report = _run_check(args)
    except ValueError as exc:
        if isinstance(exc, CapacityError):
            raise
        raise UsageError(str(exc)) from None
    print(report.summary())
    if args.output:
        _emit(dumps_json(report), args.output)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_conjecture(args) -> int:
    family = _family(args.family)
    report = conjecture_profile(family, args.mod, args.limit, _caps(args))
    if args.format == "json":
        _emit(dumps_json(report), args.output)
    else:
        rows = []
        for w in report.witnesses[: args.mod]:
            predicted = "" if w.expected is None else _plain_number(float(w.expected))
            rows.append((w.index, w.observed, predicted))
        _emit(dumps_csv(["r", "count", "predicted"], rows), args.output)
    print(report.summary(), file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="concomp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--exact-max", type=int, default=10**4, help="largest limit for exact tables")
    caps.add_argument("--mod-max", type=int, default=10**7, help="largest limit for modular tables")

    def output_opts(p, default_format="csv"):
        p.add_argument("--output", "-o", help="write to this file instead of stdout")
        p.add_argument("--format", choices=("csv", "json"), default=default_format)

    families = ("ce", "co1", "co1p", "co2")

    p = sub.add_parser("coeffs", parents=[caps], help="coefficient table f(0..limit)")
    p.add_argument("--family", required=True, choices=families)
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--mod", type=int)
    output_opts(p)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("enumerate", parents=[caps], help="list the concave compositions of n")
    p.add_argument("--family", required=True, choices=("ce", "co1", "co2"))
    p.add_argument("--n", type=int, required=True)
    output_opts(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("histogram", parents=[caps], help="residue counts E_f(r, mod; limit)")
    p.add_argument("--family", required=True, choices=families)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--limit", type=int, required=True)
    output_opts(p)
    p.set_defaults(func=cmd_histogram)

    p = sub.add_parser("verify", parents=[caps], help="run a registered check")
    p.add_argument("--check", required=True, choices=CHECKS)
    p.add_argument("--family", choices=("ce", "co1", "co2"))
    p.add_argument("--part", choices=("i", "ii", "iii"))
    p.add_argument("--limit", type=int)
    p.add_argument("--epsilon", type=float, default=0.1)
    p.add_argument("--m-max", type=int, default=20)
    p.add_argument("--j-max", type=int, default=10)
    p.add_argument("--mod", type=int)
    p.add_argument("--residue", type=int)
    p.add_argument("--window", choices=("family", "ce"), default="family")
    p.add_argument("--output", "-o", help="also write the JSON report here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", parents=[caps], help="observed vs conjectured residue counts")
    p.add_argument("--family", required=True, choices=("ce", "co1", "co2"))
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--limit", type=int, required=True)
    output_opts(p)
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
