"""Command-line front end.

    powerful-triples powerful check|list|runs|pairs
    powerful-triples pell solve|seq
    powerful-triples curve points|transform|known
    powerful-triples verify theorem|corollary|lemmas|gcds|collision|triples|bridge|all
    powerful-triples trace X

Exit codes: 0 ok, 1 counterexample, 2 usage/runtime error, 3 incomplete.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import re
import sys
import time
from itertools import islice
from pathlib import Path

from . import curves, harness, pell, powerful
from .core_arith import DEFAULT_RHO_BUDGET, Unfactored, factorize

EXIT = {"ok": 0, "verified": 0, "counterexample": 1, "error": 2, "incomplete": 3}
CEILING = 10 ** 15
LIST_CEILING = 10 ** 9
_INT = re.compile(r"^([+-]?\d+)(?:(?:\^|\*\*)(\d+))?$")


def bigint(text):
    """Decimal integer, optionally written as ``base^exp`` (e.g. 10^10)."""
    m = _INT.match(text.strip().replace("_", ""))
    if not m:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}")
    base = int(m.group(1))
    return base ** int(m.group(2)) if m.group(2) else base


def to_jsonable(obj):
    """Ints with more than 15 digits become strings; dataclasses become dicts."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return str(obj) if len(str(abs(obj))) > 15 else obj
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    if dataclasses.is_dataclass(obj):
        return to_jsonable(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        seq = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in seq]
    return str(obj)


def dumps(envelope):
    return json.dumps(to_jsonable(envelope), sort_keys=True, separators=(",", ":"))


class UsageError(Exception):
    pass


def _ceiling(name, value, ceiling=CEILING):
    if value > ceiling:
        raise UsageError(f"{name}={value} exceeds the ceiling {ceiling}")


# each handler returns (result payload, status, text lines)

def cmd_powerful_check(a):
    f = factorize(a.n, rho_budget=a.rho_budget)
    if all(e >= 2 for _, e in f):
        form = powerful.powerful_decomposition(a.n, rho_budget=a.rho_budget)
        return ({"n": a.n, "powerful": True, "a": form.a, "b": form.b}, "ok",
                [f"powerful: a={form.a} b={form.b}"])
    odd = sorted(p for p, e in f if e == 1)
    return ({"n": a.n, "powerful": False, "simple_primes": odd}, "ok",
            [f"not powerful: prime(s) {', '.join(map(str, odd))} appear once"])


def cmd_powerful_list(a):
    _ceiling("limit", a.limit, LIST_CEILING)
    vals = list(powerful.enumerate_powerful(a.limit))
    return {"limit": a.limit, "count": len(vals), "values": vals}, "ok", \
        [", ".join(map(str, vals))]


def cmd_powerful_runs(a):
    _ceiling("limit", a.limit)
    runs = powerful.find_consecutive_runs(a.limit, a.min_length)
    lines = [" ".join(map(str, r.members)) for r in runs] or ["no runs"]
    return {"runs": [{"start": r.start, "length": r.length} for r in runs]}, "ok", lines


def cmd_powerful_pairs(a):
    pairs = powerful.pairs_from_pell(a.count)
    return {"pairs": pairs}, "ok", [f"{m}, {n}" for m, n in pairs]


def cmd_pell_solve(a):
    fund = pell.fundamental_solution(a.D)
    if a.n == 1:
        sols = list(islice(pell.solutions(a.D), a.count))
        bases = [fund]
    else:
        bases = pell.base_solutions(a.D, a.n)
        sols = list(islice(pell.general_solutions(a.D, a.n), a.count))
    res = {"D": a.D, "N": a.n, "fundamental": [fund.x, fund.y],
           "classes": [[s.x, s.y] for s in bases],
           "solutions": [[s.x, s.y, s.index] for s in sols]}
    lines = [f"fundamental unit: ({fund.x}, {fund.y})"]
    if not bases:
        lines.append(f"x^2 - {a.D}y^2 = {a.n} has no solutions")
    lines += [f"({s.x}, {s.y})" for s in sols]
    return res, "ok", lines


NAMED = {"u": pell.U_SEQ, "h": pell.H_SEQ, "g": pell.G_SEQ, "v": pell.V_SEQ}


def cmd_pell_seq(a):
    if a.name:
        r = NAMED[a.name]
    elif None not in (a.c, a.d, a.s1, a.s2):
        r = pell.Recurrence2(a.c, a.d, a.s1, a.s2)
    else:
        raise UsageError("give a sequence name or all of --c --d --s1 --s2")
    res = {"c": r.c, "d": r.d, "s1": r.s1, "s2": r.s2, "terms": r.first(a.count)}
    lines = [", ".join(map(str, res["terms"]))]
    if a.contains is not None:
        k = pell.recurrence_contains(r, a.contains)
        res["contains"] = {"value": a.contains, "index": k}
        lines.append(f"{a.contains}: " + (f"index {k}" if k else "absent"))
    return res, "ok", lines


def cmd_curve_points(a):
    _ceiling("bound", a.bound, 10 ** 9)
    w = curves.WeierstrassCurve(a.A, a.B, a.C)
    pts = curves.integral_points_bounded(w, a.bound)
    return ({"curve": [w.A, w.B, w.C], "bound": a.bound,
             "points": [[p.X, p.Y] for p in pts]}, "ok",
            [str(w)] + [f"({p.X}, {p.Y})" for p in pts])


def cmd_curve_transform(a):
    q = curves.QuarticCurve(a.a, a.c, a.e)
    w = curves.quartic_to_weierstrass(q)
    res = {"quartic": [q.a, q.c, q.e], "weierstrass": [w.A, w.B, w.C]}
    lines = [str(w)]
    if a.x is not None and a.y is not None:
        P = curves.push_point(q, a.x, a.y)
        res["point"] = [P.X, P.Y]
        lines.append(f"({a.x}, {a.y}) -> ({P.X}, {P.Y})")
    return res, "ok", lines


def cmd_curve_known(a):
    out, lines, status = [], [], "verified"
    for k in curves.known_curves():
        found = curves.integral_points_bounded(k.curve, a.bound)
        agree = found == list(k.points)
        status = status if agree else "counterexample"
        out.append({"curve": str(k.curve), "expected": [[p.X, p.Y] for p in k.points],
                    "found": [[p.X, p.Y] for p in found], "agree": agree,
                    "provenance": k.provenance})
        lines.append(f"{k.curve}: {'agree' if agree else 'MISMATCH'} "
                     f"{[(p.X, p.Y) for p in found]}")
    return {"bound": a.bound, "curves": out}, status, lines


def _report(r):
    lines = [f"{r.name}: {r.status} over [{r.lo}, {r.hi}], "
             f"{r.examined} examined, {len(r.counterexamples)} counterexamples, "
             f"{len(r.incomplete)} incomplete"]
    lines += [f"  {k}: {v}" for k, v in sorted(r.tally.items())]
    lines += [f"  {n}" for n in r.notes]
    lines += [f"  {k}: {v}" for k, v in r.details.items()]
    lines += [f"  COUNTEREXAMPLE {c}" for c in r.counterexamples]
    lines += [f"  INCOMPLETE {c}" for c in r.incomplete]
    return r, r.status, lines


def cmd_verify_theorem(a):
    _ceiling("max", a.max)
    return _report(harness.verify_theorem(a.max, a.threads, a.rho_budget))


def cmd_verify_corollary(a):
    _ceiling("max", a.max)
    return _report(harness.verify_corollary(a.max, a.threads, a.rho_budget))


def cmd_verify_lemmas(a):
    _ceiling("max", a.max)
    return _report(harness.check_lemma_suite(a.max, a.threads))


def cmd_verify_gcds(a):
    _ceiling("max", a.max)
    return _report(harness.check_gcd_identities(a.max, a.threads))


def cmd_verify_collision(a):
    return _report(harness.check_sequence_collision(a.kmax))


def cmd_verify_bridge(a):
    return _report(harness.check_pell_bridge())


def cmd_verify_triples(a):
    _ceiling("limit", a.limit, 10 ** 16)
    start = 1
    ckpt = Path(a.resume_from) if a.resume_from else None
    if ckpt and ckpt.exists():
        # back up one so a pair straddling the checkpoint is still seen
        start = max(1, int(ckpt.read_text().strip()) - 1)
    r = harness.find_triples_scan(a.limit, start)
    if ckpt and r.verified:
        ckpt.write_text(f"{a.limit}\n")
    return _report(r)


WORST = ["ok", "verified", "incomplete", "counterexample"]


def cmd_verify_all(a):
    reports = [
        harness.check_lemma_suite(10 ** 6, a.threads),
        harness.check_gcd_identities(10 ** 6, a.threads),
        harness.check_sequence_collision(200),
        harness.check_pell_bridge(),
        harness.verify_theorem(10 ** 4, a.threads, a.rho_budget),
        harness.verify_corollary(10 ** 3, a.threads, a.rho_budget),
        harness.find_triples_scan(10 ** 10),
    ]
    _, curve_status, curve_lines = cmd_curve_known(argparse.Namespace(bound=10 ** 6))
    statuses = [r.status for r in reports] + [curve_status]
    status = max(statuses, key=WORST.index)
    lines = []
    for r in reports:
        lines.append(_report(r)[2][0])
    lines += curve_lines
    lines.append(f"overall: {status}")
    return {"suites": reports, "curves": curve_status}, status, lines


def cmd_trace(a):
    t = harness.trace_case(a.x, a.rho_budget)
    lines = [f"x = {t.x}, {t.case}", f"verdict: {t.verdict.value} ({t.reference})"]
    lines += [f"  [{'T' if v else 'F'}] {n}: {s}" for n, s, v in t.predicates]
    lines += [f"  branch: {d}" for d in t.detail]
    status = "counterexample" if t.verdict is harness.Verdict.COUNTEREXAMPLE else "ok"
    return t, status, lines


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the JSON envelope")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--rho-budget", type=bigint, default=DEFAULT_RHO_BUDGET)

    p = argparse.ArgumentParser(prog="powerful-triples", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    groups = p.add_subparsers(dest="group", required=True)

    def sub(group, name, func, **kw):
        sp = group.add_parser(name, parents=[common], **kw)
        sp.set_defaults(func=func)
        return sp

    g = groups.add_parser("powerful").add_subparsers(dest="cmd", required=True)
    sub(g, "check", cmd_powerful_check).add_argument("n", type=bigint)
    sub(g, "list", cmd_powerful_list).add_argument("--limit", type=bigint, required=True)
    s = sub(g, "runs", cmd_powerful_runs)
    s.add_argument("--limit", type=bigint, required=True)
    s.add_argument("--min-length", type=int, default=2)
    sub(g, "pairs", cmd_powerful_pairs).add_argument("--count", type=int, default=5)

    g = groups.add_parser("pell").add_subparsers(dest="cmd", required=True)
    s = sub(g, "solve", cmd_pell_solve)
    s.add_argument("D", type=bigint)
    s.add_argument("--n", type=bigint, default=1)
    s.add_argument("--count", type=int, default=4)
    s = sub(g, "seq", cmd_pell_seq)
    s.add_argument("name", nargs="?", choices=sorted(NAMED))
    for flag in ("--c", "--d", "--s1", "--s2", "--contains"):
        s.add_argument(flag, type=bigint)
    s.add_argument("--count", type=int, default=10)

    g = groups.add_parser("curve").add_subparsers(dest="cmd", required=True)
    s = sub(g, "points", cmd_curve_points)
    for flag in ("--A", "--B", "--C"):
        s.add_argument(flag, type=bigint, default=0)
    s.add_argument("--bound", type=bigint, default=10 ** 6)
    s = sub(g, "transform", cmd_curve_transform)
    s.add_argument("--a", type=bigint, required=True)
    s.add_argument("--c", type=bigint, default=0)
    s.add_argument("--e", type=bigint, default=0)
    s.add_argument("--x", type=bigint)
    s.add_argument("--y", type=bigint)
    sub(g, "known", cmd_curve_known).add_argument("--bound", type=bigint, default=10 ** 6)

    g = groups.add_parser("verify").add_subparsers(dest="cmd", required=True)
    sub(g, "theorem", cmd_verify_theorem).add_argument("--max", type=bigint, default=10 ** 4)
    sub(g, "corollary", cmd_verify_corollary).add_argument("--max", type=bigint, default=10 ** 3)
    sub(g, "lemmas", cmd_verify_lemmas).add_argument("--max", type=bigint, default=10 ** 6)
    sub(g, "gcds", cmd_verify_gcds).add_argument("--max", type=bigint, default=10 ** 6)
    sub(g, "collision", cmd_verify_collision).add_argument("--kmax", type=int, default=200)
    sub(g, "bridge", cmd_verify_bridge)
    s = sub(g, "triples", cmd_verify_triples)
    s.add_argument("--limit", type=bigint, default=10 ** 10)
    s.add_argument("--resume-from", metavar="FILE")
    sub(g, "all", cmd_verify_all)

    s = sub(groups, "trace", cmd_trace)
    s.add_argument("x", type=bigint)
    return p


def run(argv=None, out=sys.stdout, err=sys.stderr):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else EXIT["error"]
    command = f"{args.group} {args.cmd}" if getattr(args, "cmd", None) else args.group
    params = {k: v for k, v in sorted(vars(args).items())
              if k not in ("func", "group", "cmd", "json")}
    t0 = time.perf_counter()
    try:
        result, status, lines = args.func(args)
    except Unfactored as exc:
        result, status, lines = {"error": str(exc), "cofactor": exc.cofactor}, \
            "incomplete", [str(exc)]
    except (UsageError, ValueError, ArithmeticError) as exc:
        result, status, lines = {"error": str(exc)}, "error", [f"error: {exc}"]
    elapsed = int((time.perf_counter() - t0) * 1000)
    if args.json:
        envelope = {"command": command, "parameters": params, "result": result,
                    "status": status, "elapsed_ms": elapsed}
        print(dumps(envelope), file=out)
    else:
        stream = err if status == "error" else out
        print("\n".join(map(str, lines)), file=stream)
    return EXIT[status]


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
