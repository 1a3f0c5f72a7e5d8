"""Command line entry point: ``bhsidon <command> ...``.

Exit codes: 0 verified, 1 verification failed, 2 invalid input,
3 size ceiling exceeded. Output is deterministic for a given command line.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from math import factorial

from .admissibility import cross_validate
from .builder import build_system, density_table, lower_bound_witness
from .classical import bose_chowla_set, is_bhg
from .errors import InvalidInput, SidonError
from .ff_tower import DEFAULT_CEILING, make_tower
from .linear_forms import (LinearForm, counting_bound, system_from_json,
                           system_profile)
from .ntheory import is_prime, prime_power
from .oracle import oracle_vs_construction

ERROR_CODES = {
    "HypothesisViolation": "hypothesis_violation",
    "InvalidInput": "invalid_input",
    "CeilingExceeded": "ceiling_exceeded",
    "VerificationFailed": "verification_failed",
}


def parse_phi(text: str) -> LinearForm:
    try:
        coeffs = tuple(int(c) for c in text.replace(" ", "").strip("()[]").split(","))
    except ValueError:
        raise InvalidInput(f"cannot parse linear form {text!r}; use e.g. 1,5") from None
    return LinearForm(coeffs)


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InvalidInput(f"cannot parse integer list {text!r}") from None


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _text(payload: dict) -> str:
    lines = []
    for key in sorted(payload):
        lines.append(f"{key}: {json.dumps(payload[key], sort_keys=True)}")
    return "\n".join(lines) + "\n"


# each command returns (payload, csv_rows, verified)

def cmd_classical(args):
    if not is_prime(args.p):
        hint = ""
        pk = prime_power(args.p)
        if pk:
            hint = f" (use p={pk[0]} k={pk[1]})"
        raise InvalidInput(f"{args.p} is not prime{hint}")
    tower = make_tower(args.p, args.k, args.h, args.ceiling)
    A = bose_chowla_set(tower, verify=False)
    res = is_bhg(A, tower.h, 1, tower.N)
    in_range = len(A) == tower.q and all(1 <= a <= tower.N - 1 for a in A)
    verified = res.ok and in_range
    payload = {"command": "classical", "tower": tower.describe(), "set": A.to_json(),
               "size": len(A), "modulus": tower.N, "max_orbit_count_mod": res.max_count,
               "verified": verified}
    return payload, [["element"]] + [[a] for a in A], verified


def _system_payload(phi, system, g, extra):
    report = system_profile(phi, system)
    verified = report.max_multiplicity <= g
    payload = {**extra, "phi": list(phi.coeffs), "sets": [list(A) for A in system.sets],
               "g": g, "report": report.to_json(), "verified": verified}
    rows = [["coordinate", "index", "element"]]
    rows += [[i + 1, j + 1, a] for i, A in enumerate(system.sets) for j, a in enumerate(A)]
    return payload, rows, verified


def cmd_system(args):
    phi = parse_phi(args.phi)
    system, cert = build_system(phi, args.q, experimental=args.experimental_prime_power,
                                ceiling=args.ceiling)
    g = factorial(phi.h)
    checks = counting_bound(phi, system, cert.verified_multiplicity, args.q ** phi.h - 2)
    payload, rows, verified = _system_payload(
        phi, system, g, {"command": "system", "certificate": cert.to_json(),
                         "counting_bound": [c.to_json() for c in checks]})
    verified = verified and all(c.ok for c in checks)
    payload["verified"] = verified
    if cert.experimental:
        payload["note"] = "prime-power q: multiplicity bound not proven"
    return payload, rows, verified


def cmd_witness(args):
    phi = parse_phi(args.phi)
    g = args.g if args.g is not None else factorial(phi.h)
    wit = lower_bound_witness(phi, args.n, g, ceiling=args.ceiling)
    if wit is None:
        payload = {"command": "witness", "phi": list(phi.coeffs), "n": args.n, "g": g,
                   "q": None, "verified": True}
        return payload, [["n", "q"], [args.n, ""]], True
    payload, rows, verified = _system_payload(
        phi, wit.system, g, {"command": "witness", "n": args.n, "q": wit.q,
                             "certificate": wit.certificate.to_json()})
    in_box = all(1 <= a <= args.n for A in wit.system.sets for a in A)
    payload["verified"] = verified = verified and in_box
    return payload, rows, verified


def cmd_admissible(args):
    phi = parse_phi(args.phi)
    cv = cross_validate(phi, args.bound, strict=False)
    payload = {"command": "admissible", "phi": list(phi.coeffs), **cv.to_json(),
               "verified": cv.ok}
    prog = set(cv.progression_primes)
    rows = [["prime", "in_progression"]] + [[q, int(q in prog)] for q in cv.direct_primes]
    return payload, rows, cv.ok


def cmd_table(args):
    phi = parse_phi(args.phi)
    rows = density_table(phi, parse_int_list(args.n_values), args.g, ceiling=args.ceiling)
    # a row is certified when q^h - 2 <= n, i.e. the system fits in [1, n]
    verified = all(r.q is None or r.q ** phi.h - 2 <= r.n for r in rows)
    payload = {"command": "table", "phi": list(phi.coeffs),
               "g": args.g if args.g is not None else factorial(phi.h),
               "rows": [r.to_json() for r in rows], "verified": verified}
    csv_rows = [["n", "q", "ratio"]]
    csv_rows += [[r.n, "" if r.q is None else r.q, "" if r.ratio is None else repr(r.ratio)]
                 for r in rows]
    return payload, csv_rows, verified


def cmd_oracle(args):
    phi = parse_phi(args.phi)
    cmp_ = oracle_vs_construction(phi, args.n, args.g)
    payload = {"command": "oracle", **cmp_.to_json(), "verified": True}
    rows = [["key", "value"]] + [[k, "" if v is None else v]
                                 for k, v in sorted(cmp_.to_json().items()) if k != "phi"]
    return payload, rows, True


def cmd_verify(args):
    if args.file in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(args.file) as fh:
            text = fh.read()
    try:
        phi, system = system_from_json(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"not valid JSON: {exc}") from exc
    g = args.g if args.g is not None else system.g
    report = system_profile(phi, system)
    verified = None if g is None else report.max_multiplicity <= g
    payload = {"command": "verify", "phi": list(phi.coeffs),
               "sets": [list(A) for A in system.sets], "g": g,
               "report": report.to_json(), "verified": verified}
    rows = [["value", "count"]] + [[v, c] for v, c in sorted(report.profile.items())]
    return payload, rows, verified is not False


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--ceiling", type=int, default=DEFAULT_CEILING,
                        help="largest field size p^(kh) allowed (default 2^24)")

    parser = argparse.ArgumentParser(
        prog="bhsidon",
        description="Construct and verify B_h[g] sets and phi-Sidon systems.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classical", parents=[common],
                       help="Bose-Chowla set from GF(p^k) inside GF(p^(kh))")
    p.add_argument("p", type=int)
    p.add_argument("k", type=int)
    p.add_argument("h", type=int)
    p.set_defaults(func=cmd_classical)

    p = sub.add_parser("system", parents=[common], help="phi-Sidon system for a prime q")
    p.add_argument("phi", help="comma-separated coefficients, e.g. 1,5")
    p.add_argument("q", type=int)
    p.add_argument("--experimental-prime-power", action="store_true",
                   help="allow prime powers q (unproven for linear forms)")
    p.set_defaults(func=cmd_system)

    p = sub.add_parser("witness", parents=[common],
                       help="largest constructible q with q^h - 2 <= n")
    p.add_argument("phi")
    p.add_argument("n", type=int)
    p.add_argument("--g", type=int)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("admissible", parents=[common],
                       help="admissible primes and the CRT progression cross-check")
    p.add_argument("phi")
    p.add_argument("bound", type=int)
    p.set_defaults(func=cmd_admissible)

    p = sub.add_parser("table", parents=[common], help="q(n) / n^(1/h) density rows")
    p.add_argument("phi")
    p.add_argument("n_values", help="comma-separated n values")
    p.add_argument("--g", type=int)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("oracle", parents=[common],
                       help="exact search versus construction versus counting ceiling")
    p.add_argument("phi")
    p.add_argument("n", type=int)
    p.add_argument("--g", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", parents=[common], help="re-verify a system JSON document")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--g", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, rows, verified = args.func(args)
    except SidonError as exc:
        err = {"error": ERROR_CODES.get(type(exc).__name__, "error"), "message": str(exc)}
        sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        return exc.exit_code
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    elif args.format == "csv":
        text = _csv(rows)
    else:
        text = _text(payload)
    _emit(text, args.out)
    return 0 if verified else 1


if __name__ == "__main__":
    sys.exit(main())
