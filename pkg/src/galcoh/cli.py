"""Command line: ``galcoh run``, ``galcoh verify``, ``galcoh snf``.

Exit codes: 0 success, 1 task or property failure, 2 parse/validation failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from .scenario import ParseError, Scenario, UnresolvedReference, run_scenario


def _emit(obj, out):
    text = json.dumps(obj, sort_keys=True, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_run(args):
    try:
        with open(args.file) as fh:
            sc = Scenario.from_json(fh.read())
    except (OSError, ParseError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    try:
        report, nerr = run_scenario(sc, seed=args.seed)
    except (ParseError, UnresolvedReference, KeyError, ValueError, TypeError) as e:
        print("error: invalid definitions: %s" % e, file=sys.stderr)
        return 2
    _emit(report, args.out)
    return 1 if nerr else 0


def cmd_verify(args):
    from .verify import UnknownSuite, verify
    try:
        report = verify(args.suite, args.seed, args.cases, mutant=args.mutant)
    except UnknownSuite as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    _emit(report, args.out)
    return 1 if report["failed"] else 0


def cmd_snf(args):
    from .intlat import smith_normal_form
    try:
        with open(args.matrix) as fh:
            A = json.load(fh)
        if not (isinstance(A, list) and A and all(isinstance(r, list) and len(r) == len(A[0]) for r in A)):
            raise ValueError("matrix must be a non-empty rectangular list of lists")
        A = [[int(x) for x in r] for r in A]
    except (OSError, ValueError, TypeError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    s = smith_normal_form(A)
    _emit({"diagonal": s.diagonal(), "U": s.U, "V": s.V, "D": s.D}, args.out)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="galcoh", description="Finite group cohomology and torus computations.")
    sub = p.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", help="evaluate a JSON scenario")
    r.add_argument("file")
    r.add_argument("--out")
    r.add_argument("--seed", type=int, default=0)
    r.set_defaults(fn=cmd_run)
    v = sub.add_parser("verify", help="randomized property suites")
    v.add_argument("--suite", default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--cases", type=int, default=20)
    v.add_argument("--mutant", choices=["alpha-zero"], default=None,
                   help="inject a designed defect (the tn suite must then fail)")
    v.add_argument("--out")
    v.set_defaults(fn=cmd_verify)
    s = sub.add_parser("snf", help="Smith normal form of a JSON integer matrix")
    s.add_argument("--matrix", required=True)
    s.add_argument("--out")
    s.set_defaults(fn=cmd_snf)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
