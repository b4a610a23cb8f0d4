"""Command-line interface.

Exit status: 0 success / all checks pass, 1 a verification mismatch,
2 usage or parameter error, 3 refusal because the work estimate exceeds
``--budget``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys

from . import codes, verify
from .charsums import predict_sum, weil_sum_brute
from .errors import BudgetExceeded, ConstructionError, DomainError, ParameterError
from .gf2m import build_field, parse_polynomial, poly_to_str
from .predict import predicted_code

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

ENV_PREFIX = "TRACECODES_"

_GPOW = re.compile(r"^g\^(-?\d+)$")


def parse_element(field, text: str) -> int:
    """Integer encoding (decimal, 0x.., 0b..) or ``g^k`` for the field generator."""
    s = text.strip().lower()
    mt = _GPOW.match(s)
    if mt:
        return field.antilog(int(mt.group(1)))
    try:
        x = int(s, 0)
    except ValueError:
        raise ParameterError(f"cannot parse element {text!r}") from None
    if not 0 <= x < field.q:
        raise ParameterError(f"{x} is not an element of GF(2^{field.m})")
    return x


def _env(name, default=None):
    return os.environ.get(ENV_PREFIX + name, default)


def _global_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global options")
    g.add_argument("--format", choices=("json", "csv", "table"), default=_env("FORMAT", "json"))
    g.add_argument("--modulus", default=_env("MODULUS"),
                   help="field modulus: 0x13, 0b10011, 10011 or x^4+x+1")
    g.add_argument("--threads", type=int, default=int(_env("THREADS", "1")))
    g.add_argument("--budget", type=int, default=int(_env("BUDGET", str(verify.DEFAULT_BUDGET))),
                   help="ceiling on estimated table lookups")
    return p


def build_parser() -> argparse.ArgumentParser:
    glob = _global_flags()
    parser = argparse.ArgumentParser(
        prog="tracecodes",
        description="Trace defining-set codes over GF(2^m) and their Weil sums.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-info", parents=[glob], help="modulus, generator and trace data")
    p.add_argument("--m", type=int, required=True)

    p = sub.add_parser("sum", parents=[glob], help="S_h(a,b) by brute force and closed form")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--a", required=True, help="integer encoding or g^k")
    p.add_argument("--b", required=True, help="integer encoding or g^k")

    p = sub.add_parser("code", parents=[glob], help="enumerate C_{D_a}")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--a", type=int, required=True, choices=(0, 1))
    p.add_argument("--show-set", action="store_true", help="include the defining set")
    p.add_argument("--show-matrix", action="store_true",
                   help="include generator columns (bits of each d_i)")

    p = sub.add_parser("predict", parents=[glob], help="closed-form parameters")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--a", type=int, choices=(0, 1), help="default: both")

    p = sub.add_parser("verify", parents=[glob], help="brute force versus closed forms")
    p.add_argument("--m", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--a", type=int, choices=(0, 1), help="default: both")
    p.add_argument("--sweep", type=int, metavar="M_MAX", help="every case with 2 <= m <= M_MAX")
    p.add_argument("--sums", action="store_true",
                   help="also check S_h(a,b) for every a != 0 and b")
    return parser


# -- commands: each returns (payload, exit status) --------------------------

def _field(args, m):
    modulus = parse_polynomial(args.modulus) if args.modulus else None
    return build_field(m, modulus)


def cmd_field_info(args):
    f = _field(args, args.m)
    return {
        "m": f.m,
        "q": f.q,
        "modulus": hex(f.modulus),
        "modulus_poly": poly_to_str(f.modulus),
        "generator": f.generator,
        "trace_mask": f.trace_mask,
        "tables": f.has_tables,
    }, EXIT_OK


def cmd_sum(args):
    f = _field(args, args.m)
    a = parse_element(f, args.a)
    b = parse_element(f, args.b)
    value = weil_sum_brute(f, args.h, a, b)
    pred = predict_sum(f, args.h, a, b)
    ok = pred.admits(value)
    return {
        "m": f.m, "h": args.h, "a": a, "b": b,
        "modulus": hex(f.modulus),
        "value": value,
        "lemma": pred.case,
        "kind": pred.kind,
        "admissible": sorted(pred.values),
        "verdict": "pass" if ok else "mismatch",
    }, EXIT_OK if ok else EXIT_MISMATCH


def _dist_list(counts):
    return [{"w": w, "A": c} for w, c in sorted(counts.items())]


def cmd_code(args):
    f = _field(args, args.m)
    dset = codes.defining_set(f, args.h, args.a)
    cost = verify.estimate_case_cost(f.m, len(dset))
    if cost > args.budget:
        raise BudgetExceeded(cost, args.budget, f"code ({f.m},{args.h},{args.a})")
    wd = codes.weight_distribution(f, dset)
    out = {
        "m": f.m, "h": args.h, "a": args.a,
        "modulus": hex(f.modulus),
        "n": wd.n, "k": wd.k, "d": wd.d,
        "dist": _dist_list(wd.counts),
    }
    if args.show_set:
        out["defining_set"] = dset.elements.tolist()
    if args.show_matrix:
        out["generator_columns"] = [format(int(x), f"0{f.m}b")[::-1] for x in dset.elements]
    return out, EXIT_OK


def cmd_predict(args):
    f = _field(args, args.m)
    rows = []
    for a in ([args.a] if args.a is not None else [0, 1]):
        p = predicted_code(f.m, args.h, a)
        nz = [w for w in p.dist if w]
        rows.append({
            "m": f.m, "h": args.h, "a": a,
            "modulus": hex(f.modulus),
            "case": p.case, "n": p.n, "k": p.k, "d": min(nz) if nz else None,
            "dist": _dist_list(p.dist),
        })
    return (rows[0] if len(rows) == 1 else {"cases": rows}), EXIT_OK


def cmd_verify(args):
    modulus = parse_polynomial(args.modulus) if args.modulus else None
    if args.sweep is not None:
        if args.m is not None or args.h is not None:
            raise ParameterError("--sweep excludes --m/--h")
        mod_for = {modulus.bit_length() - 1: modulus} if modulus else None
        rep = verify.sweep(args.sweep, threads=args.threads, budget=args.budget, modulus_for=mod_for)
        doc = rep.to_dict()
        ok = rep.passed
        if args.sums:
            sums = []
            for m in range(2, min(args.sweep, verify.SUM_SWEEP_MAX_M) + 1):
                for h in range(1, m):
                    if m % h == 0:
                        s = verify.verify_sums(m, h, modulus=(mod_for or {}).get(m), budget=args.budget)
                        sums.append(s.to_dict())
                        ok = ok and s.ok
            doc["sums"] = sums
            doc["verdict"] = "pass" if ok else "mismatch"
        return doc, EXIT_OK if ok else EXIT_MISMATCH
    if args.m is None or args.h is None:
        raise ParameterError("verify needs --m and --h, or --sweep")
    reports = [
        verify.verify_case(args.m, args.h, a, modulus=modulus, budget=args.budget)
        for a in ([args.a] if args.a is not None else [0, 1])
    ]
    ok = all(r.passed for r in reports)
    doc = {
        "cases": [r.to_dict() for r in reports],
        "notes": [n for r in reports for n in r.notes],
    }
    if args.sums:
        s = verify.verify_sums(args.m, args.h, modulus=modulus, budget=args.budget)
        doc["sums"] = [s.to_dict()]
        ok = ok and s.ok
    doc["verdict"] = "pass" if ok else "mismatch"
    return doc, EXIT_OK if ok else EXIT_MISMATCH


COMMANDS = {
    "field-info": cmd_field_info,
    "sum": cmd_sum,
    "code": cmd_code,
    "predict": cmd_predict,
    "verify": cmd_verify,
}


# -- rendering ----------------------------------------------------------------

def _dist_str(dist):
    return ";".join(f"{e['w']}:{e['A']}" for e in dist)


def _case_rows(payload):
    """Flat records for csv/table output."""
    if "cases" in payload:
        rows = []
        for c in payload["cases"]:
            if "params" in c:  # verification report
                mom = c["checks"]["moments"]
                rows.append({
                    **c["params"], "modulus": c["modulus"], "case": c["case"],
                    "n": c["n"], "k": c["k"], "d": c["d"], "dist": _dist_str(c["dist"]),
                    "p0": mom["p0"], "p1": mom["p1"], "p2": mom["p2"],
                    "dual_ge_3": c["checks"]["dual_ge_3"],
                    "sums_checked": c["checks"]["sums_checked"],
                    "sums_passed": c["checks"]["sums_passed"],
                    "notes": " | ".join(c["notes"]),
                    "verdict": c["verdict"],
                })
            else:
                rows.append({**c, "dist": _dist_str(c["dist"])})
        return rows
    row = {}
    for k, v in payload.items():
        if k == "dist":
            row[k] = _dist_str(v)
        elif isinstance(v, list):
            row[k] = ";".join(str(x) for x in v)
        else:
            row[k] = v
    return [row]


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render(payload, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    rows = _case_rows(payload)
    cols = list(dict.fromkeys(k for r in rows for k in r))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_cell(r.get(c)) for c in cols])
        return buf.getvalue()
    lines = []
    for r in rows:
        width = max(len(c) for c in cols)
        for c in cols:
            if c in r:
                lines.append(f"{c:<{width}}  {_cell(r[c])}")
        lines.append("")
    if "notes" in payload and "cases" in payload:
        lines += [f"note: {n}" for n in payload["notes"]]
    if "verdict" in payload and "cases" in payload:
        lines.append(f"verdict: {payload['verdict']}")
    return "\n".join(lines).rstrip("\n") + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, status = COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"tracecodes: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ParameterError, ConstructionError, DomainError) as exc:
        print(f"tracecodes: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(payload, args.format))
    return status


if __name__ == "__main__":
    sys.exit(main())
