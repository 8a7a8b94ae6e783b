"""Double shuffle and distribution relations at roots of unity: dimensions, points, numerics.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 input/output error.
Set ``DMRD_LOG_LEVEL`` (for example ``DEBUG``) for diagnostic logging on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from fractions import Fraction

from . import __version__
from .algebra import CyclicGroup, ParseError, format_rational, format_series, parse_rational, parse_series
from .group import exp_s_psi, group_exp, ihara_bracket, mt_inv, mt_mul
from .numeric import DivergentIndex, LiIndex, ToleranceNotReached, li_eval, verify_stuffle_numeric, weight1_constant_numeric
from .solver import (alpha_weight, build_rational_point, check_point, dimension_table, dmrd0_basis,
                     tangent_basis)
from .tables import reference_dagger, reference_dims

FORMAT_VERSION = 1
DEFAULT_SEED = 20240611
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


def _positive(name, minimum=1):
    def parse(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer") from None
        if v < minimum:
            raise argparse.ArgumentTypeError(f"{name} must be >= {minimum}")
        return v
    return parse


def _rational_arg(text):
    try:
        return Fraction(parse_rational(text))
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text):
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def envelope(command, args, **payload):
    out = {"format_version": FORMAT_VERSION, "command": command,
           "group": getattr(args, "group", None),
           "relations": getattr(args, "relations", None),
           "truncation": payload.pop("truncation", None),
           "seed": getattr(args, "seed", None)}
    if out["group"] is None:
        out.pop("group")
    if out["relations"] is None:
        out.pop("relations")
    out.update(payload)
    return out


def emit(obj):
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def read_series(path, group=None):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        s = parse_series(text, group=group)
    except (ParseError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None
    if s.flavor != "X":
        raise InputError(f"{path}: expected an X-series")
    return s


def write_series(s, args, command):
    text = format_series(s)
    if getattr(args, "output", None):
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {args.output}: {exc.strerror}") from None
    if args.format == "json":
        emit(envelope(command, args, truncation=s.truncation, series=text))
    elif not getattr(args, "output", None):
        sys.stdout.write(text)
    return EXIT_OK


# -- commands --------------------------------------------------------------

def cmd_dims(args):
    tab = dimension_table(args.group, args.max_weight, args.relations, workers=args.workers)
    if args.format == "json":
        emit(envelope("dims", args, truncation=args.max_weight,
                      dims={str(p): d for p, d in tab["dims"].items()},
                      dims0={str(p): d for p, d in tab["dims0"].items()},
                      daggers=tab["daggers"]))
    elif args.format == "tsv":
        lines = ["weight\tdim\tdim0\tdagger"]
        for p, d in tab["dims"].items():
            lines.append(f"{p}\t{d}\t{tab['dims0'][p]}\t{int(p in tab['daggers'])}")
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        cells = [f"{d}†" if p in tab["daggers"] else str(d) for p, d in tab["dims"].items()]
        sys.stdout.write(f"N={args.group} {args.relations}: " + ", ".join(cells) + "\n")
    return EXIT_OK


def cmd_basis(args):
    if args.subspace == "dmrd0":
        basis = dmrd0_basis(args.group, args.weight, args.relations)
    else:
        basis = tangent_basis(args.group, args.weight, args.relations)
    texts = [format_series(b) for b in basis]
    if args.format == "json":
        emit(envelope("basis", args, truncation=args.weight, basis=texts))
    else:
        sys.stdout.write("\n".join(texts) if texts else "# empty basis\n")
    return EXIT_OK


def cmd_check(args):
    phi = read_series(args.input, CyclicGroup(args.group))
    report = check_point(phi, args.relations, args.lam)
    emit(envelope("check", args, truncation=phi.truncation, report=report.to_json(),
                  passed=report.passed))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_build(args):
    phi = build_rational_point(args.group, args.max_weight, args.lam, args.even_only,
                               args.relations, offset=args.offset)
    return write_series(phi, args, "build")


def cmd_act(args):
    psi = read_series(args.psi)
    phi = read_series(args.on, psi.group)
    if psi.constant_term != 0:
        raise InputError("--psi must have constant term 0")
    if phi.constant_term != 1:
        raise InputError("--on must have constant term 1")
    return write_series(exp_s_psi(psi, phi), args, "act")


def cmd_mul(args):
    a = read_series(args.left)
    b = read_series(args.right, a.group)
    if a.constant_term != 1 or b.constant_term != 1:
        raise InputError("mul needs constant terms 1")
    return write_series(mt_mul(a, b), args, "mul")


def cmd_inv(args):
    a = read_series(args.input)
    if a.constant_term != 1:
        raise InputError("inv needs constant term 1")
    return write_series(mt_inv(a), args, "inv")


def cmd_exp(args):
    a = read_series(args.input)
    if a.constant_term != 0:
        raise InputError("exp needs constant term 0")
    return write_series(group_exp(a), args, "exp")


def cmd_bracket(args):
    a = read_series(args.left)
    b = read_series(args.right, a.group)
    if a.constant_term or b.constant_term:
        raise InputError("bracket needs constant terms 0")
    return write_series(ihara_bracket(a, b), args, "bracket")


def cmd_li(args):
    if len(args.s) != len(args.k):
        raise UsageError("--s and --k need the same length")
    try:
        res = li_eval(LiIndex(args.s, tuple(k % args.group for k in args.k), args.group), args.tol)
    except (DivergentIndex, ValueError) as exc:
        raise UsageError(str(exc)) from None
    except ToleranceNotReached as exc:
        emit(envelope("li", args, passed=False, error=str(exc)))
        return EXIT_FAIL
    emit(envelope("li", args, truncation=sum(args.s), passed=True,
                  value={"re": res.value.real, "im": res.value.imag, "error": res.error},
                  cutoff=res.cutoff))
    return EXIT_OK


# -- verification suites ---------------------------------------------------

def _random_convergent_word(rng, order, max_weight):
    while True:
        w, left = [], rng.randint(1, max_weight)
        while left:
            n = rng.randint(1, left)
            w.append((n, rng.randrange(order)))
            left -= n
        if w[0] != (1, 0):
            return tuple(w)


def suite_stuffle(args):
    rng = random.Random(args.seed)
    cases = []
    for i in range(args.count):
        order = args.group or rng.randint(1, 4)
        while True:
            u = _random_convergent_word(rng, order, 4)
            v = _random_convergent_word(rng, order, 4)
            if sum(n for n, _ in u) + sum(n for n, _ in v) <= 5:
                break
        chk = verify_stuffle_numeric(u, v, CyclicGroup(order), 1e-4)
        cases.append({"name": f"stuffle[{i}] N={order}", "u": list(map(list, u)),
                      "v": list(map(list, v)), "difference": chk.difference, "passed": chk.passed})
    return cases


def suite_weight1(args):
    orders = [args.group] if args.group else range(3, 13)
    cases = []
    for n in orders:
        ok = all(weight1_constant_numeric(n, k) == Fraction(2 * k - n, n) for k in range(1, n))
        cases.append({"name": f"weight1 N={n}", "passed": ok})
    return cases


def suite_stability(args):
    n = args.group or 1
    W = args.max_weight or {1: 8, 2: 6, 3: 4}.get(n, 3)
    lam = args.lam
    phi = build_rational_point(n, W, lam, even_only=False)
    base = check_point(phi, "dmrd", lam)
    cases = [{"name": f"point N={n} W={W}", "passed": base.passed}]
    for p in range(1, W + 1):
        for i, psi in enumerate(dmrd0_basis(n, p)):
            moved = exp_s_psi(psi.extend(W), phi)
            rep = check_point(moved, "dmrd", lam)
            cases.append({"name": f"act weight {p} #{i}", "passed": rep.passed,
                          "alpha": format_rational(rep.alpha_value)})
    return cases


def suite_tables(args):
    n = args.group or 1
    expected = reference_dims(n, args.relations)
    W = args.max_weight or len(expected)
    if W > len(expected):
        raise UsageError(f"no reference values beyond weight {len(expected)} for N={n}")
    tab = dimension_table(n, W, args.relations, workers=args.workers)
    cases = []
    for p in range(1, W + 1):
        cases.append({"name": f"N={n} p={p}", "expected": expected[p - 1],
                      "computed": tab["dims"][p], "passed": tab["dims"][p] == expected[p - 1]})
    want = [reference_dagger(n)] if reference_dagger(n) <= W else []
    cases.append({"name": f"N={n} daggers", "expected": want, "computed": tab["daggers"],
                  "passed": tab["daggers"] == want})
    return cases


SUITES = {"stuffle": suite_stuffle, "weight1": suite_weight1, "stability": suite_stability,
          "tables": suite_tables}


def cmd_verify(args):
    cases = SUITES[args.suite](args)
    passed = all(c["passed"] for c in cases)
    emit(envelope("verify", args, truncation=args.max_weight, suite=args.suite,
                  passed=passed, cases=cases))
    return EXIT_OK if passed else EXIT_FAIL


# -- parser ----------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog="dmrd", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, group_required=True, relations=True):
        p.add_argument("--group", type=_positive("--group"), required=group_required)
        if relations:
            p.add_argument("--relations", choices=["dmr", "dmrd"], default="dmrd")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    def series_out(p):
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.add_argument("--output", help="also write the series to this file")

    p = sub.add_parser("dims", help="tangent-space dimensions per weight")
    common(p)
    p.add_argument("--max-weight", type=_positive("--max-weight"), required=True)
    p.add_argument("--format", choices=["json", "tsv", "pretty"], default="json")
    p.add_argument("--workers", type=_positive("--workers"), default=1)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("basis", help="canonical basis of a weight-p tangent space")
    common(p)
    p.add_argument("--weight", type=_positive("--weight"), required=True)
    p.add_argument("--subspace", choices=["dmrd", "dmrd0"], default="dmrd")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("check", help="membership report for a series file")
    common(p)
    p.add_argument("--lambda", dest="lam", type=_rational_arg, default=Fraction(0))
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("build", help="rational point truncated at a weight")
    common(p)
    p.add_argument("--max-weight", type=_positive("--max-weight", 0), required=True)
    p.add_argument("--lambda", dest="lam", type=_rational_arg, default=Fraction(1))
    p.add_argument("--even-only", action="store_true")
    p.add_argument("--offset", type=_rational_arg, default=Fraction(0),
                   help="value of the free coordinates at each lift (0 is canonical)")
    series_out(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("act", help="Exp(psi) acting on a group element")
    p.add_argument("--psi", required=True)
    p.add_argument("--on", required=True)
    series_out(p)
    p.set_defaults(func=cmd_act)

    for name, func, help_text in (("mul", cmd_mul, "group product"),
                                  ("bracket", cmd_bracket, "Ihara bracket")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("left")
        p.add_argument("right")
        series_out(p)
        p.set_defaults(func=func)
    for name, func, help_text in (("inv", cmd_inv, "group inverse"),
                                  ("exp", cmd_exp, "group exponential")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input")
        series_out(p)
        p.set_defaults(func=func)

    p = sub.add_parser("li", help="numerical hyperlogarithm at roots of unity")
    p.add_argument("--group", type=_positive("--group"), default=1)
    p.add_argument("--s", type=_int_list, required=True)
    p.add_argument("--k", type=_int_list, default=None)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_li)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    common(p, group_required=False)
    p.add_argument("--max-weight", type=_positive("--max-weight"), default=None)
    p.add_argument("--lambda", dest="lam", type=_rational_arg, default=Fraction(1))
    p.add_argument("--count", type=_positive("--count"), default=25)
    p.add_argument("--workers", type=_positive("--workers"), default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    level = os.environ.get("DMRD_LOG_LEVEL")
    if level:
        logging.basicConfig(level=level.upper(), stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "li" and args.k is None:
        args.k = (0,) * len(args.s)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"dmrd: error: {exc}\n")
        return EXIT_USAGE
    except InputError as exc:
        sys.stderr.write(f"dmrd: {exc}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
