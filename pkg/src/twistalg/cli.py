"""Command-line interface: present, verify, frobenius, oracle."""

from __future__ import annotations

import argparse
import json
import sys

from .errors import TwistAlgError
from .pipeline import (
    FAULTS,
    build_from_problem,
    class2_checks,
    frobenius_checks,
    inject_fault,
    oracle_reports,
    presentation_checks,
)
from .problem import parse
from .report import (
    build_report_dict,
    frobenius_summary,
    render_dot,
    render_json,
    render_text,
)


def _fail_exit(checks) -> int:
    for c in checks:
        if not c.passed:
            print(f"first failing check: {c.name} {c.detail}".rstrip(), file=sys.stderr)
            return 1
    return 0


def cmd_present(args) -> int:
    pf = parse(args.file)
    build = build_from_problem(pf, args.seed)
    checks = presentation_checks(build) + class2_checks(build, full=True)
    fchecks, _ = frobenius_checks(build)
    report = build_report_dict(build, checks, frobenius_summary(build, fchecks))
    sys.stdout.write(render_text(report))
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(render_json(report))
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(render_dot(build.Q))
    return _fail_exit(checks + fchecks)


def cmd_verify(args) -> int:
    pf = parse(args.file)
    build = build_from_problem(pf, args.seed)
    if args.inject_fault:
        build = inject_fault(build, args.inject_fault)
    checks = presentation_checks(build)
    checks += class2_checks(build, full=args.level == "full")
    for c in checks:
        detail = f" ({c.detail})" if c.detail else ""
        print(f"[{'pass' if c.passed else 'FAIL'}] {c.name}{detail}")
    return _fail_exit(checks)


def cmd_frobenius(args) -> int:
    pf = parse(args.file)
    build = build_from_problem(pf, args.seed)
    if args.inject_fault:
        build = inject_fault(build, args.inject_fault)
    checks, witness = frobenius_checks(build)
    for c in checks:
        detail = f" ({c.detail})" if c.detail else ""
        print(f"[{'pass' if c.passed else 'FAIL'}] {c.name}{detail}")
    if witness is not None:
        print(f"tau = {[t.tolist() for t in build.taus]}")
        nontrivial = sum(1 for b in build.beta.values() if not b.is_one())
        print(f"beta nontrivial on {nontrivial} of {len(build.beta)} elements")
        print(f"coefficient twist exponent = {build.P.p ** 2}")
    return _fail_exit(checks)


def cmd_oracle(args) -> int:
    pf = parse(args.file)
    build = build_from_problem(pf, args.seed)
    reports = oracle_reports(build)
    for r in reports:
        print(r.line())
    if args.json:
        payload = [
            {
                "name": r.name,
                "validates": r.validates,
                "expected": repr(r.expected),
                "computed": repr(r.computed),
                "passed": r.passed,
            }
            for r in reports
        ]
        with open(args.json, "w") as fh:
            fh.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    for r in reports:
        if not r.passed:
            print(f"first failing check: {r.name}", file=sys.stderr)
            return 1
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="twistalg",
        description=(
            "Exact quiver presentations of twisted group algebras of P x| L "
            "over finite fields, with built-in verification"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pres = sub.add_parser("present", help="emit the presentation report")
    pres.add_argument("file")
    pres.add_argument("--dot", help="write the quiver as a DOT graph")
    pres.add_argument("--json", help="write the machine-readable report")
    pres.add_argument("--seed", type=int, default=None)
    pres.set_defaults(func=cmd_present)

    ver = sub.add_parser("verify", help="run the relation and character checks")
    ver.add_argument("file")
    ver.add_argument("--level", choices=("quick", "full"), default="full")
    ver.add_argument("--seed", type=int, default=None)
    ver.add_argument("--inject-fault", choices=FAULTS, default=None)
    ver.set_defaults(func=cmd_verify)

    fro = sub.add_parser("frobenius", help="construct and verify the twist isomorphism")
    fro.add_argument("file")
    fro.add_argument("--seed", type=int, default=None)
    fro.add_argument("--inject-fault", choices=FAULTS, default=None)
    fro.set_defaults(func=cmd_frobenius)

    orc = sub.add_parser("oracle", help="run the independent brute-force checks")
    orc.add_argument("file")
    orc.add_argument("--json", help="write the oracle reports as JSON")
    orc.add_argument("--seed", type=int, default=None)
    orc.set_defaults(func=cmd_oracle)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TwistAlgError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
