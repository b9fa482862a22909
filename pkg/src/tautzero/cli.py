"""Command line front end.  Every command prints one JSON report.

Exit status: 0 on success, 1 when a check fails, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, blowups, covers, cycles, strata, tnumbers

INPUT_ERRORS = (
    covers.CoverError,
    blowups.DomainError,
    strata.StrataError,
    cycles.CycleError,
    tnumbers.TNumberError,
    ValueError,
)


def check(name: str, passed: bool, detail="") -> dict:
    return {"name": name, "passed": bool(passed), "detail": detail}


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _elements(text: str) -> list[tuple[int, ...]]:
    # "3,5" for cyclic groups, "1:2,0:1" for products
    try:
        return [tuple(int(c) for c in x.split(":")) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad group element list {text!r}")


# handlers return (result, checks, verdict)

def _cover(args):
    data = covers.validate(args.k, args.mono)
    action = args.action
    if action == "validate":
        return data.as_dict(), [check("valid", True)], "VALID"
    if action == "invariants":
        inv = covers.invariants(data)
        rh = 2 * inv.genus - 2 == data.k - inv.n_ram
        return inv.as_dict(), [check("riemann_hurwitz", rh)], f"genus {inv.genus}"
    if action == "normalize":
        norm = covers.normalize_total_ramification(data)
        if norm is covers.NOT_NORMALIZABLE:
            return {"normalized": None, "normalizable": False}, [], "NotNormalizable"
        ok = covers.is_normalized(norm)
        return ({"normalized": norm.as_dict(), "normalizable": True},
                [check("first_entry_one_and_sum_k", ok)], " ".join(map(str, norm.mono)))
    if action == "orbit":
        orbit = covers.unit_orbit(data)
        return ({"orbit": [d.as_dict() for d in orbit], "size": len(orbit)},
                [check("contains_input", data in orbit)], str(len(orbit)))
    if action == "decide":
        dec = blowups.decide_tautological(data)
        return (dec.as_dict(), [check("vdim_formula", dec.vdim == dec.c1 + dec.genus - 1)],
                dec.verdict.value)
    raise AssertionError(action)


def _ms(args):
    value = blowups.ms(args.e, args.f)
    result = {"ms": value}
    checks = []
    if args.trace:
        tr = blowups.ms_trace(args.e, args.f)
        result["trace"] = tr.as_dict()
        checks.append(check("trace_total_matches", tr.ms_total == value))
    return result, checks, str(value)


def _blowup(args):
    if args.action == "verify-bound":
        if args.max is None:
            raise ValueError("verify-bound needs --max")
        rep = blowups.verify_ms_bound(args.max, jobs=args.jobs)
        name = "ms_axioms_and_bound"
    else:
        if args.kmax is None:
            raise ValueError("verify-inequality needs --kmax")
        rep = blowups.verify_decision_inequality(args.kmax, jobs=args.jobs)
        name = "decision_inequality"
    detail = f"{rep.checked} cases, {len(rep.violations)} violations"
    return rep.as_dict(), [check(name, rep.passed, detail)], "PASS" if rep.passed else "FAIL"


def _strata(args):
    if args.action == "enum":
        graphs = strata.enumerate_stable_graphs(args.genus, args.markings)
        result = {
            "count": len(graphs),
            "graphs": [dict(G.as_dict(), dimension=strata.stratum_dimension(G)) for G in graphs],
        }
        return result, [], str(len(graphs))
    rep = strata.verify_r0_spanning(args.genus, args.markings)
    detail = f"{rep.num_graphs} graphs, {len(rep.feasible)} feasible with positive genus"
    checks = [
        check("no_positive_genus_zero_cycle", not rep.feasible, detail),
        check("strict_budget", not rep.strict_budget_failures),
    ]
    return rep.as_dict(), checks, "PASS" if rep.passed else "FAIL"


def _sym(args):
    if args.action == "coeffs":
        coeffs = cycles.partition_coefficients(args.n)
        oracle = cycles.coefficients_by_elimination(args.n) if args.n <= cycles.DEFAULT_LIMIT else None
        result = {"n": args.n, "count": len(coeffs),
                  "coefficients": [{"partition": [list(b) for b in P], "coefficient": c}
                                   for P, c in coeffs]}
        checks = []
        if oracle is not None:
            checks.append(check("matches_elimination_oracle", dict(coeffs) == oracle))
        return result, checks, " ".join(str(c) for _, c in coeffs)
    ok = cycles.verify_blockwise_identity(cycles.generic_symbols(args.n))
    return {"n": args.n, "identity_holds": ok}, [check("blockwise_identity", ok)], \
        "PASS" if ok else "FAIL"


def _tnum(args):
    if args.action == "bound":
        b = tnumbers.t_upper_bound(args.genus, args.markings)
        ok = tnumbers.replay(b) == b.bound
        return b.as_dict(), [check("provenance_replay", ok)], str(b.bound)
    rep = tnumbers.verify_recursion_consistency(args.genus, args.markings)
    return rep.as_dict(), [check("recursion_consistency", rep.passed, f"{rep.checked} cases")], \
        "PASS" if rep.passed else "FAIL"


def _trade(args):
    group = tnumbers.FiniteAbelianGroup.parse(args.group)
    anchors = _elements(args.anchor)
    if len(anchors) != 1:
        raise ValueError(f"expected one anchor element, got {args.anchor!r}")
    trace = tnumbers.trade_points(group, anchors[0], _elements(args.start))
    problems = trace.check()
    checks = [check("coordinate_sums_and_stage_identities", not problems, "; ".join(problems))]
    return trace.as_dict(), checks, "PASS" if not problems else "FAIL"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="print only the verdict line")
    common.add_argument("--out", type=Path, help="also write the report to PATH")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for scans")

    p = argparse.ArgumentParser(prog="tautzero",
                                description="Exact checks on tautological 0-cycles.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cover", parents=[common], help="cyclic cover data")
    c.add_argument("action", choices=["validate", "invariants", "normalize", "orbit", "decide"])
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--mono", type=_int_list, required=True, help="a,b,c")
    c.set_defaults(handler=_cover)

    m = sub.add_parser("ms", parents=[common], help="blowup multiplicity sum")
    m.add_argument("--e", type=int, required=True)
    m.add_argument("--f", type=int, required=True)
    m.add_argument("--trace", action="store_true")
    m.set_defaults(handler=_ms)

    b = sub.add_parser("blowup", parents=[common], help="exhaustive blowup scans")
    b.add_argument("action", choices=["verify-bound", "verify-inequality"])
    b.add_argument("--max", type=int)
    b.add_argument("--kmax", type=int)
    b.set_defaults(handler=_blowup)

    s = sub.add_parser("strata", parents=[common], help="stable graphs")
    s.add_argument("action", choices=["enum", "verify-r0"])
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--markings", type=int, required=True)
    s.set_defaults(handler=_strata)

    y = sub.add_parser("sym", parents=[common], help="symmetrization coefficients")
    y.add_argument("action", choices=["coeffs", "verify"])
    y.add_argument("--n", type=int, required=True)
    y.set_defaults(handler=_sym)

    t = sub.add_parser("tnum", parents=[common], help="T(g, n) bounds")
    t.add_argument("action", choices=["bound", "verify"])
    t.add_argument("--genus", type=int, required=True)
    t.add_argument("--markings", type=int, required=True)
    t.set_defaults(handler=_tnum)

    r = sub.add_parser("trade", parents=[common], help="genus one point trading")
    r.add_argument("--group", required=True, help="cyclic orders, e.g. 7 or 2x3")
    r.add_argument("--anchor", required=True, help="element, e.g. 0 or 1:2")
    r.add_argument("--start", required=True, help="comma-separated elements")
    r.set_defaults(handler=_trade)
    return p


def _inputs(args) -> dict:
    skip = {"handler", "quiet", "out", "jobs", "command", "action"}
    out = {}
    for k, v in sorted(vars(args).items()):
        if k in skip or v is None:
            continue
        out[k] = v
    return out


def run(argv=None) -> tuple[int, dict | None]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    command = args.command + (f" {args.action}" if getattr(args, "action", None) else "")
    try:
        result, checks, verdict = args.handler(args)
    except INPUT_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2, None
    report = {
        "command": command,
        "inputs": _inputs(args),
        "result": result,
        "checks": checks,
        "version": __version__,
    }
    code = 0 if all(c["passed"] for c in checks) else 1
    text = dumps(report)
    if args.out:
        args.out.write_text(text + "\n", encoding="utf-8")
    print(verdict if args.quiet else text)
    return code, report


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
