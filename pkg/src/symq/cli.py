"""Command-line entry point.

Exit codes: 0 on success or PASS, 1 on a verification FAIL, 2 on a usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import alt5
from .classifier import SpecError, equivalent, invariants, parse_spec
from .logic.group import FormulaSyntaxError, parse_group_formula
from .logic.mformula import render_m
from .logic.translate import UnboundVariable, check_translation, load_pool, translate
from .ordinal import (OrdinalSyntaxError, add, canonical_k, cf, coeff, parse_ord, sim_k, to_text,
                      upper)
from .perm import Convention, PermTuple, census, tuples_conjugate


class UsageError(ValueError):
    pass


def threads() -> int:
    raw = os.environ.get("SYMQ_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"SYMQ_THREADS must be a positive integer, got {raw!r}")
    if n < 1:
        raise UsageError("SYMQ_THREADS must be at least 1")
    return n


class Out:
    """Report stream: 'key: value' text or 'key<TAB>value' records."""

    def __init__(self, machine: bool):
        self.machine = machine

    def kv(self, key: str, value) -> None:
        print(f"{key}\t{value}" if self.machine else f"{key}: {value}")

    def text(self, line: str) -> None:
        print(line)


# ---------------------------------------------------------------- subcommands

def cmd_verify(args, out: Out) -> int:
    if args.group != "a5":
        raise UsageError("only 'verify a5' is available")
    if args.lemma in (None, "3.4"):
        print("checking Lemma 3.4 over subgroups of A(5)xA(5) ...", file=sys.stderr)
    reports = alt5.lemma_reports(args.lemma)
    for r in reports:
        out.text(r.render(args.machine))
    return 0 if all(r.passed for r in reports) else 1


def _tuple(text: str, n: int) -> PermTuple:
    return PermTuple.parse(text, n)


def cmd_census(args, out: Out) -> int:
    c = census(_tuple(args.tuple, args.omega), Convention(args.convention))
    out.kv("arity", c.arity)
    out.kv("orbits", sum(n for _, n in c.counts))
    for line in c.lines():
        key, _, value = line.partition(": ")
        out.kv(key, value)
    return 0


def cmd_conjugate(args, out: Out) -> int:
    h = tuples_conjugate(_tuple(args.first, args.omega), _tuple(args.second, args.omega))
    out.kv("conjugate", "yes" if h is not None else "no")
    if h is not None:
        out.kv("witness", h)
    return 0


def cmd_translate(args, out: Out) -> int:
    psi = translate(parse_group_formula(args.formula), args.arity, args.weighted)
    out.text(render_m(psi))
    return 0


def _check_one(job):
    arity, text, omega, weighted = job
    return check_translation(parse_group_formula(text), omega, arity, weighted=weighted)


def cmd_check_translation(args, out: Out) -> int:
    if args.formula is not None:
        jobs = [(args.arity, args.formula)]
    else:
        jobs = [(args.arity if args.arity is not None else a, f) for a, f in load_pool(args.pool)]
    work = [(a, f, args.omega, args.weighted) for a, f in jobs]
    for _, f, *_ in work:
        parse_group_formula(f)  # syntax errors are usage errors, before any work starts
    n = threads()
    if n > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            reports = list(pool.map(_check_one, work))
    else:
        reports = [_check_one(w) for w in work]
    failed = 0
    for r in reports:
        out.text(r.line())
        if not r.passed:
            failed += 1
            for witness, left, right in r.examples:
                out.text(f"witness\t{r.formula}\t{witness}\tgroup={left}\tcensus={right}")
    out.kv("formulas", len(reports))
    out.kv("failed", failed)
    return 1 if failed else 0


def cmd_ordinal(args, out: Out) -> int:
    op = args.op
    if op == "cnf":
        a = parse_ord(args.values[0])
        out.kv("cnf", to_text(a))
        if a.omega is not None:
            out.kv("coeff[w]", to_text(a.omega))
        for n, c in a.levels:
            out.kv(f"coeff[{n}]", c)
        return 0
    if op == "cf":
        out.kv("cf", cf(parse_ord(args.values[0])))
        return 0
    if op == "simk":
        a, b = (parse_ord(v) for v in args.values)
        out.kv("sim", "true" if sim_k(a, b, args.k) else "false")
        return 0
    if op == "canon":
        a = parse_ord(args.values[0])
        c = canonical_k(a, args.k)
        out.kv("canon", to_text(c))
        for n in range(args.k + 1):
            out.kv(f"level[{n}]", f"{coeff(a, n)} {upper(a, n)}")
        return 0
    total = parse_ord("0")
    for v in args.values:
        total = add(total, parse_ord(v))
    out.kv("sum", to_text(total))
    return 0


_ORD_ARITY = {"cnf": 1, "cf": 1, "simk": 2, "canon": 1}


def cmd_classify(args, out: Out) -> int:
    spec = parse_spec(args.kappa, args.lam, args.mu, args.continuum)
    for line in invariants(spec, args.k).lines(args.machine):
        out.text(line)
    return 0


def _spec_triple(text: str, theta: str):
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise UsageError(f"a spec is 'kappa,lambda,mu', got {text!r}")
    return parse_spec(*parts, theta)


def cmd_equiv(args, out: Out) -> int:
    s1 = _spec_triple(args.spec1, args.continuum)
    s2 = _spec_triple(args.spec2, args.continuum)
    v = equivalent(s1, s2, args.k)
    out.kv("verdict", "InvariantsAgree" if v.agree else "Distinguished")
    if not v.agree:
        out.kv("distinguished_by", v.reason)
    return 0


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symq", description="Workbench for quotients of infinite symmetric groups.")
    p.add_argument("--machine", action="store_true", help="emit key<TAB>value records")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="exhaustive checks over A(5)")
    v.add_argument("group", choices=["a5"])
    v.add_argument("--lemma", choices=["3.3", "3.4", "3.5"])
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("census", help="orbit-type census of a permutation tuple")
    c.add_argument("--omega", type=int, required=True, help="ground set size")
    c.add_argument("--convention", default="include_trivial", choices=[x.value for x in Convention])
    c.add_argument("tuple", help="comma-separated cycle notation, e.g. '(0 1), (1 2)'")
    c.set_defaults(func=cmd_census)

    j = sub.add_parser("conjugate", help="decide simultaneous conjugacy of two tuples")
    j.add_argument("--omega", type=int, required=True)
    j.add_argument("first")
    j.add_argument("second")
    j.set_defaults(func=cmd_conjugate)

    t = sub.add_parser("translate", help="compile a group formula to the census language")
    t.add_argument("--arity", type=int, required=True)
    t.add_argument("--weighted", action="store_true")
    t.add_argument("formula")
    t.set_defaults(func=cmd_translate)

    k = sub.add_parser("check-translation", help="compare both evaluators on every assignment")
    k.add_argument("--omega", type=int, required=True)
    k.add_argument("--arity", type=int)
    k.add_argument("--pool", help="pool file of '<arity>: <formula>' lines (default: bundled pool)")
    k.add_argument("--weighted", action="store_true")
    k.add_argument("formula", nargs="?")
    k.set_defaults(func=cmd_check_translation)

    o = sub.add_parser("ordinal", help="base-Omega ordinal calculator")
    o.add_argument("op", choices=["cnf", "cf", "simk", "canon", "sum"])
    o.add_argument("--k", type=int, default=0)
    o.add_argument("values", nargs="+")
    o.set_defaults(func=cmd_ordinal)

    s = sub.add_parser("classify", help="case tag and invariants of S_lambda(mu)/S_kappa(mu)")
    s.add_argument("--kappa", required=True)
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--mu", required=True)
    s.add_argument("--continuum", required=True, help="theta with 2^aleph0 = aleph_theta")
    s.add_argument("--k", type=int, default=3)
    s.set_defaults(func=cmd_classify)

    e = sub.add_parser("equiv", help="compare the invariants of two quotients")
    e.add_argument("--spec1", required=True, help="'kappa,lambda,mu'")
    e.add_argument("--spec2", required=True)
    e.add_argument("--continuum", required=True)
    e.add_argument("--k", type=int, help="levels to compare (default: all)")
    e.set_defaults(func=cmd_equiv)
    return p


def _validate(args) -> None:
    if getattr(args, "k", None) is not None and args.k < 0:
        raise UsageError("--k must be non-negative")
    if args.command == "ordinal" and args.op in _ORD_ARITY and len(args.values) != _ORD_ARITY[args.op]:
        raise UsageError(f"'ordinal {args.op}' takes {_ORD_ARITY[args.op]} value(s)")
    if args.command == "check-translation" and args.formula is not None and args.pool is not None:
        raise UsageError("give either a formula or --pool, not both")
    if args.command == "check-translation" and args.formula is not None and args.arity is None:
        raise UsageError("--arity is required with a single formula")
    if args.command == "translate" and args.arity < 0:
        raise UsageError("--arity must be non-negative")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Out(args.machine)
    try:
        threads()
        _validate(args)
        return args.func(args, out)
    except (UsageError, FormulaSyntaxError, OrdinalSyntaxError, SpecError, UnboundVariable,
            ValueError, OSError) as exc:
        print(f"symq: error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
