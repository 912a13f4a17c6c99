"""Command-line entry points.

Subcommands: analyze (complexity report), certify (synthesize and write a
certificate), verify (replay + numeric check), counterexample (the
quadratic-phase report), serve (the game session service).

Exit codes: 2 parse errors, 3 not true complexity one, 4 no admissible
labeling, 5 invalid certificate step, 6 oversized group.
"""

from __future__ import annotations

import argparse
import json
import sys

from .lindata import InvalidStep, certificate_from_json, certificate_to_json, replay
from .planner import (
    FormSystem,
    NotTrueComplexityOne,
    UnplannableLabeling,
    analyze,
    plan,
)
from .verifier import ReplayFailed, TooLarge, check_theorem

EXIT_PARSE = 2
EXIT_NOT_COMPLEXITY_ONE = 3
EXIT_UNPLANNABLE = 4
EXIT_INVALID_STEP = 5
EXIT_TOO_LARGE = 6


def _parse_system(args) -> FormSystem:
    try:
        return FormSystem.parse(args.forms, args.p)
    except (ValueError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def cmd_analyze(args) -> int:
    sys_ = _parse_system(args)
    report = analyze(sys_)
    print(json.dumps(report.to_json(), indent=2))
    return 0


def cmd_certify(args) -> int:
    sys_ = _parse_system(args)
    try:
        cert = plan(sys_, args.target_j)
    except NotTrueComplexityOne as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_COMPLEXITY_ONE
    except UnplannableLabeling as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_UNPLANNABLE
    try:
        replay(cert)
    except InvalidStep as e:
        print(f"error: produced certificate failed replay: {e}", file=sys.stderr)
        return EXIT_INVALID_STEP
    text = certificate_to_json(cert)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text)
    m = cert.cs_count
    print(
        f"certified target {cert.target}: {m} CS steps, exponent 2^-{cert.exponent_log2_denominator}",
        file=sys.stderr,
    )
    return 0


def cmd_verify(args) -> int:
    try:
        with open(args.cert) as fh:
            cert = certificate_from_json(fh.read())
    except (OSError, ValueError, KeyError) as e:
        print(f"error: cannot read certificate: {e}", file=sys.stderr)
        return EXIT_PARSE
    try:
        replay(cert)
    except InvalidStep as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_STEP
    n = args.group_copies
    if cert.p ** (3 * n) > args.guard:
        print(f"error: group {cert.p}^{n} enumeration exceeds the guard", file=sys.stderr)
        return EXIT_TOO_LARGE
    try:
        report = check_theorem(cert, trials=args.trials, n=n, seed=args.seed, guard=args.guard)
    except ReplayFailed as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID_STEP
    except TooLarge as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_TOO_LARGE
    print(json.dumps(report.to_json(), indent=2))
    return 0 if report.failures == 0 else 1


def cmd_counterexample(args) -> int:
    from .counterexample import BadPrime, PTooSmall, desk_scale_prime, full_report

    p = args.p or desk_scale_prime()
    try:
        report = full_report(p, grid_size=args.grid)
    except (BadPrime, PTooSmall) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    print(json.dumps(report, indent=2))
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    server = serve(args.port, args.host)
    print(f"serving on http://{args.host}:{args.port}", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sixforms")
    sub = ap.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="complexity report for a six-form system")
    pa.add_argument("--p", type=int, required=True)
    pa.add_argument("--forms", required=True, help='six triples: "a,b,c; a,b,c; ..."')
    pa.set_defaults(fn=cmd_analyze)

    pc = sub.add_parser("certify", help="synthesize a certificate")
    pc.add_argument("--p", type=int, required=True)
    pc.add_argument("--forms", required=True)
    pc.add_argument("--target-j", default="1", choices=[str(i) for i in range(1, 7)])
    pc.add_argument("--out", default=None)
    pc.set_defaults(fn=cmd_certify)

    pv = sub.add_parser("verify", help="replay and numerically check a certificate")
    pv.add_argument("cert")
    pv.add_argument("--trials", type=int, default=20)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--group", dest="group_copies", type=int, default=1,
                    help="number of group copies n in F_p^n")
    pv.add_argument("--guard", type=int, default=10**9)
    pv.set_defaults(fn=cmd_verify)

    px = sub.add_parser("counterexample", help="quadratic-phase construction report")
    px.add_argument("--p", type=int, default=None)
    px.add_argument("--grid", type=int, default=64)
    px.set_defaults(fn=cmd_counterexample)

    ps = sub.add_parser("serve", help="run the game session service")
    ps.add_argument("--port", type=int, default=8631)
    ps.add_argument("--host", default="127.0.0.1")
    ps.set_defaults(fn=cmd_serve)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
