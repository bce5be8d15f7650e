"""Exhaustive checks of the non-existence theorem, its corollary and the
supporting lemmas, plus a per-candidate trace of the case analysis."""
from __future__ import annotations

import enum
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .core_arith import (DEFAULT_RHO_BUDGET, Unfactored, factorize, gcd,
                         is_perfect_square, merge_factorizations,
                         padic_valuation)
from .curves import IntegralPoint, QuarticCurve, pull_x
from .pell import (H_SEQ, U_SEQ, V_SEQ, general_solutions,
                   recurrence_contains, recurrence_term)
from .powerful import (as_prime_cube_times_square, enumerate_powerful,
                       is_powerful, runs_in_stream)

RETRY_FACTOR = 16


@dataclass
class VerificationReport:
    name: str
    lo: int
    hi: int
    examined: int = 0
    counterexamples: list = field(default_factory=list)
    incomplete: list = field(default_factory=list)
    tally: Counter = field(default_factory=Counter)
    notes: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def status(self):
        if self.counterexamples:
            return "counterexample"
        if self.incomplete:
            return "incomplete"
        return "verified"

    @property
    def verified(self):
        return self.status == "verified"

    def merge(self, other):
        """Combine reports over adjacent ranges; associative."""
        out = VerificationReport(self.name, min(self.lo, other.lo),
                                 max(self.hi, other.hi))
        out.examined = self.examined + other.examined
        out.counterexamples = self.counterexamples + other.counterexamples
        out.incomplete = self.incomplete + other.incomplete
        out.tally = self.tally + other.tally
        # Counter addition drops zero counts; keep the keys visible
        for k in set(self.tally) | set(other.tally):
            out.tally.setdefault(k, 0)
        out.notes = self.notes + other.notes
        out.details = {**self.details, **other.details}
        out.elapsed = self.elapsed + other.elapsed
        return out

    def to_dict(self):
        return {
            "name": self.name,
            "range": [self.lo, self.hi],
            "examined": self.examined,
            "counterexamples": self.counterexamples,
            "incomplete": self.incomplete,
            "tally": dict(sorted(self.tally.items())),
            "notes": self.notes,
            "details": self.details,
            "elapsed_ms": int(self.elapsed * 1000),
            "status": self.status,
        }


def _partitions(lo, hi, parts):
    size = max(1, -(-(hi - lo + 1) // parts))
    return [(a, min(hi, a + size - 1)) for a in range(lo, hi + 1, size)]


def _run_partitioned(worker, name, lo, hi, threads, *args):
    t0 = time.perf_counter()
    if threads <= 1 or hi - lo < 1000:
        report = worker(lo, hi, *args)
    else:
        chunks = _partitions(lo, hi, threads * 4)
        with ProcessPoolExecutor(threads) as pool:
            parts = list(pool.map(worker, *zip(*chunks), *[[a] * len(chunks) for a in args]))
        report = parts[0]
        for p in parts[1:]:
            report = report.merge(p)
    report.name, report.lo, report.hi = name, lo, hi
    report.elapsed = time.perf_counter() - t0
    return report


def _factor_product(parts, budget):
    """Factor a product from its pieces, retrying once with a bigger budget."""
    try:
        return merge_factorizations(*(factorize(m, rho_budget=budget) for m in parts))
    except Unfactored:
        return merge_factorizations(
            *(factorize(m, rho_budget=budget * RETRY_FACTOR) for m in parts))


def _fmt(f):
    return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in f) or "1"


# --- lemma and gcd suites -------------------------------------------------

def _lemma_chunk(lo, hi):
    r = VerificationReport("lemmas", lo, hi)
    for x in range(lo, hi + 1):
        r.examined += 1
        if is_perfect_square(x) is not None and is_perfect_square(x + 2) is not None:
            r.counterexamples.append({"lemma": "square-gap", "x": x})
        res = x % 3
        if res == 1:
            r.tally["3-adic x^2+x+1"] += 1
            if padic_valuation(3, x * x + x + 1) != 1:
                r.counterexamples.append({"lemma": "v3(x^2+x+1)=1", "x": x})
        elif res == 2:
            r.tally["3-adic x^2-x+1"] += 1
            if padic_valuation(3, x * x - x + 1) != 1:
                r.counterexamples.append({"lemma": "v3(x^2-x+1)=1", "x": x})
    r.tally["square-gap"] += hi - lo + 1
    return r


def check_lemma_suite(limit, threads=1):
    """Square gaps never equal 2; 3 || x^2+x+1 for x = 1 and 3 || x^2-x+1
    for x = 2 (mod 3); all x in [1, limit]."""
    if limit < 3:
        raise ValueError("limit must be >= 3")
    return _run_partitioned(_lemma_chunk, "lemmas", 1, limit, threads)


def _gcd_chunk(lo, hi):
    r = VerificationReport("gcds", lo, hi)
    for x in range(lo, hi + 1):
        r.examined += 1
        res = x % 3
        g = gcd(x - 1, x * x + x + 1)
        if g != (3 if res == 1 else 1):
            r.counterexamples.append({"identity": "gcd(x-1,x^2+x+1)", "x": x, "gcd": g})
        g = gcd(x + 1, x * x - x + 1)
        if g != (3 if res == 2 else 1):
            r.counterexamples.append({"identity": "gcd(x+1,x^2-x+1)", "x": x, "gcd": g})
        c = 8 * x ** 3
        g = gcd(c - 1, c + 1)
        if g != 1:
            r.counterexamples.append({"identity": "gcd((2x)^3-1,(2x)^3+1)", "x": x, "gcd": g})
        if x % 2:
            r.tally["odd u"] += 1
            g = gcd(x * x + x + 1, x * x - x + 1)
            if g != 1:
                r.counterexamples.append({"identity": "gcd(u^2+u+1,u^2-u+1)", "u": x, "gcd": g})
    return r


def check_gcd_identities(limit, threads=1):
    if limit < 2:
        raise ValueError("limit must be >= 2")
    return _run_partitioned(_gcd_chunk, "gcds", 1, limit, threads)


# --- theorem and corollary ------------------------------------------------

def _theorem_chunk(lo, hi, budget):
    r = VerificationReport("theorem", lo, hi)
    for x in range(lo, hi + 1):
        r.examined += 1
        r.tally[f"x={x % 3} mod 3"] += 1
        try:
            fm = _factor_product((x - 1, x * x + x + 1), budget)
            fp = _factor_product((x + 1, x * x - x + 1), budget)
        except Unfactored as exc:
            r.incomplete.append({"x": x, "cofactor": exc.cofactor})
            continue
        p = as_prime_cube_times_square(fm.n, fm)
        q = as_prime_cube_times_square(fp.n, fp)
        r.tally["x^3-1 = p^3 y^2"] += p is not None
        r.tally["x^3+1 = q^3 z^2"] += q is not None
        if p is not None and x % 3 != 1:
            # coprime split: p^3 | x^2+x+1 and x-1 is a square
            r.tally["minus-side implication hits"] += 1
            if (x * x + x + 1) % p ** 3 or is_perfect_square(x - 1) is None:
                r.counterexamples.append({"implication": "minus side", "x": x, "p": p})
        if q is not None and x % 3 != 2:
            r.tally["plus-side implication hits"] += 1
            if (x * x - x + 1) % q ** 3 or is_perfect_square(x + 1) is None:
                r.counterexamples.append({"implication": "plus side", "x": x, "q": q})
        if p is not None and q is not None:
            r.counterexamples.append({"x": x, "p": p, "q": q, "even": x % 2 == 0})
    return r


def verify_theorem(x_max, threads=1, rho_budget=DEFAULT_RHO_BUDGET):
    """Search x in [2, x_max] for x^3 - 1 = p^3 y^2 with x^3 + 1 = q^3 z^2.

    Odd x is checked too rather than filtered out, so the parity argument is
    itself tested. Also counts hypothesis hits for the coprime-split
    implications on each side, which makes their vacuity visible.
    """
    if x_max < 2:
        raise ValueError("x_max must be >= 2")
    r = _run_partitioned(_theorem_chunk, "theorem", 2, x_max, threads, rho_budget)
    for key in ("minus-side implication hits", "plus-side implication hits",
                "x^3-1 = p^3 y^2", "x^3+1 = q^3 z^2"):
        r.tally.setdefault(key, 0)
    return r


def corollary_form(f):
    """Whether a factorization has the shape p^3 q^3 y^2 (p = q allowed)."""
    odd = [(p, e) for p, e in f if e % 2]
    if len(odd) == 2:
        return all(e >= 3 for _, e in odd)
    if not odd:
        return any(e >= 6 for _, e in f)
    return False


def _corollary_chunk(lo, hi, budget):
    r = VerificationReport("corollary", lo, hi)
    for x in range(lo, hi + 1):
        r.examined += 1
        t = 2 * x
        try:
            f = _factor_product((t - 1, t * t + t + 1, t + 1, t * t - t + 1), budget)
        except Unfactored as exc:
            r.incomplete.append({"x": x, "cofactor": exc.cofactor})
            continue
        odd = sum(1 for _, e in f if e % 2)
        r.tally[f"{odd} odd-exponent primes"] += 1
        if corollary_form(f):
            r.counterexamples.append({"x": x, "n": f.n, "factorization": _fmt(f)})
        elif x <= 3:
            r.notes.append(f"x={x}: 64x^6-1 = {f.n} = {_fmt(f)} is not p^3 q^3 y^2")
    return r


def verify_corollary(x_max, threads=1, rho_budget=DEFAULT_RHO_BUDGET):
    if x_max < 1:
        raise ValueError("x_max must be >= 1")
    return _run_partitioned(_corollary_chunk, "corollary", 1, x_max, threads, rho_budget)


# --- recurrences ----------------------------------------------------------

def check_sequence_collision(k_max):
    """u_k against (3 h_l -/+ 1) / 2, plus the identities tying u to h."""
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    t0 = time.perf_counter()
    r = VerificationReport("collision", 1, k_max)
    u = [None] + U_SEQ.first(k_max + 1)
    h = [None] + H_SEQ.first(k_max + 1)
    v = [None] + V_SEQ.first(k_max + 1)
    r.examined = k_max
    bad = r.counterexamples.append

    u_index = {u[k]: k for k in range(1, k_max + 1)}
    for l in range(1, k_max + 1):
        for sign, label in ((-1, "minus"), (1, "plus")):
            t = 3 * h[l] + sign
            if t % 2 == 0 and t // 2 in u_index:
                hit = {"k": u_index[t // 2], "l": l, "form": f"(3h_l{'+' if sign > 0 else '-'}1)/2"}
                r.tally[f"{label} collisions"] += 1
                if (label, hit["k"], l) == ("minus", 1, 1):
                    r.notes.append("u_1 = 1 = (3 h_1 - 1)/2 (the excluded x = 2 case)")
                else:
                    bad(hit)
    r.tally.setdefault("minus collisions", 0)
    r.tally.setdefault("plus collisions", 0)

    if v[1] != 0 or v[2] != 1:
        bad({"identity": "v seeds"})
    for k in range(1, k_max + 1):
        if u[k] - h[k] != v[k]:
            bad({"identity": "v_k = u_k - h_k", "k": k})
    for k in range(2, k_max + 1):
        checks = {
            "v_k = h_{k-1}": v[k] == h[k - 1],
            "u_k = h_k + h_{k-1}": u[k] == h[k] + h[k - 1],
            "u_k > 3u_{k-1}": u[k] > 3 * u[k - 1],
            "h_k > 3h_{k-1}": h[k] > 3 * h[k - 1],
        }
        # u_k < 4h_k/3 < (3h_k-1)/2 < (3u_k-1)/2 < 3u_k < u_{k+1}
        chain = [Fraction(u[k]), Fraction(4 * h[k], 3), Fraction(3 * h[k] - 1, 2),
                 Fraction(3 * u[k] - 1, 2), Fraction(3 * u[k]), Fraction(u[k + 1])]
        checks["interleaving chain"] = all(a < b for a, b in zip(chain, chain[1:]))
        for name, ok in checks.items():
            r.tally[name] += 1
            if not ok:
                bad({"identity": name, "k": k})
    r.elapsed = time.perf_counter() - t0
    return r


def check_pell_bridge(u_max=10 ** 6, scan_max=10 ** 4):
    """Tie the u-sequence to x^2 - 3y^2 = -2 and check the Pell rewriting
    of u^2 + u + 1 = 3 w^2 and u^2 - u + 1 = 3 w^2."""
    t0 = time.perf_counter()
    r = VerificationReport("pell-bridge", 1, u_max)
    for s in general_solutions(3, -2):
        if s.x > u_max:
            break
        r.examined += 1
        if s.x * s.x - 3 * s.y * s.y != -2 or recurrence_term(U_SEQ, s.index) != s.x:
            r.counterexamples.append({"u": s.x, "index": s.index})
    for u in range(1, scan_max + 1):
        for sign in (1, -1):
            w2, rem = divmod(u * u + sign * u + 1, 3)
            w = is_perfect_square(w2) if rem == 0 else None
            if w is None:
                continue
            r.tally[f"u^2{'+' if sign > 0 else '-'}u+1 = 3w^2 hits"] += 1
            t, rem = divmod(2 * u + sign, 3)
            if rem or (2 * w) ** 2 - 3 * t * t != 1 or recurrence_contains(H_SEQ, t) is None:
                r.counterexamples.append({"u": u, "w": w, "sign": sign})
    for u in range(1, scan_max + 1):
        a = u * u
        if (a + 1) ** 2 - (a + 1) + 1 != (a + u + 1) * (a - u + 1) or \
                (a - 1) ** 2 + (a - 1) + 1 != a * a - a + 1:
            r.counterexamples.append({"substitution": u})
    r.elapsed = time.perf_counter() - t0
    return r


# --- consecutive powerful numbers ----------------------------------------

def find_triples_scan(limit, start=1):
    """Scan the powerful numbers up to ``limit`` for runs of length >= 3."""
    if limit < 4:
        raise ValueError("limit must be >= 4")
    t0 = time.perf_counter()
    r = VerificationReport("triples", start, limit)
    pairs = []

    def counted(stream):
        for n in stream:
            r.examined += 1
            yield n

    for run in runs_in_stream(counted(enumerate_powerful(limit, start)), 2):
        r.tally[f"runs of length {run.length}"] += 1
        if run.length >= 3:
            r.counterexamples.append({"start": run.start, "length": run.length})
        pairs.append(run.start)
        for m in run.members:
            if m % 4 == 2:
                r.counterexamples.append({"alignment": m})
    r.tally.setdefault("runs of length 2", 0)
    r.details["pair_starts"] = pairs
    r.elapsed = time.perf_counter() - t0
    return r


# --- per-candidate trace --------------------------------------------------

class Verdict(enum.Enum):
    HYPOTHESIS_FAILS = "hypothesis_fails"
    # both forms hold: every branch of the case analysis should have closed
    COUNTEREXAMPLE = "no_contradiction"


@dataclass
class CaseTrace:
    x: int
    residue: int
    case: str
    predicates: list
    verdict: Verdict
    reference: str
    detail: list

    def to_dict(self):
        return {
            "x": self.x, "residue": self.residue, "case": self.case,
            "predicates": [{"name": n, "statement": s, "value": v}
                           for n, s, v in self.predicates],
            "verdict": self.verdict.value, "reference": self.reference,
            "detail": self.detail,
        }


def _square(n):
    return n >= 0 and is_perfect_square(n) is not None


def _three_times_square(n):
    return n % 3 == 0 and _square(n // 3)


def _branches(x, preds):
    """Walk each branch of the residue case; return one line per branch
    naming the step at which this x leaves it."""
    P = preds.append
    res = x % 3
    a, b = x * x + x + 1, x * x - x + 1
    out = []
    if res == 0:
        sm, sp = _square(x - 1), _square(x + 1)
        P(("case1: x-1 and x+1 both squares", f"{x - 1}, {x + 1}", sm and sp))
        if not sm:
            out.append("x-1 is not a square, so the coprime split already fails")
        elif not sp:
            out.append("x+1 is not a square, so the coprime split already fails")
        else:
            out.append("x-1 and x+1 both squares: square-gap lemma")
        return out
    if res == 1:
        P(("v3(x^2+x+1) = 1", f"v3({a}) = {padic_valuation(3, a)}",
           padic_valuation(3, a) == 1))
        if not _square(x + 1):
            P(("x+1 square", str(x + 1), False))
            return ["x+1 is not a square, so the plus-side coprime split fails"]
        u = is_perfect_square(x + 1)
        P(("x+1 = u^2", f"u = {u}", True))
        P(("p=3 branch: x-1 = 9t^2", str(x - 1), (x - 1) % 9 == 0 and _square((x - 1) // 9)))
        out.append("p = 3: x-1 would be (3t)^2 next to the square x+1: square-gap lemma")
        P(("p | x^2+x+1 branch: x-1 = 3v^2", str(x - 1), _three_times_square(x - 1)))
        out.append("p | x^2+x+1: u^2 - 3v^2 = 2 has no solution mod 3")
        ok = _three_times_square(a)
        P(("p | x-1 branch: x^2+x+1 = 3v^2", str(a), ok))
        if ok:
            pt = (3 * u * u, 3 * u * 3 * is_perfect_square(a // 3))
            P(("quartic point lands on Y^2 = X^3 - 3X^2 + 9X", str(pt), True))
            out.append("p | x-1: nonzero point on Y^2 = X^3 - 3X^2 + 9X, whose only integral point is (0, 0)")
        else:
            out.append("p | x-1: x^2+x+1 is not 3 times a square")
        return out
    bv = padic_valuation(3, b)
    P(("v3(x^2-x+1) = 1", f"v3({b}) = {bv}", bv == 1))
    if not _square(x - 1):
        P(("x-1 square", str(x - 1), False))
        return ["x-1 is not a square, so the minus-side coprime split fails"]
    u = is_perfect_square(x - 1)
    P(("x-1 = u^2", f"u = {u}", True))
    P(("q=3 branch: x+1 = 9t^2", str(x + 1), (x + 1) % 9 == 0 and _square((x + 1) // 9)))
    out.append("q = 3: x+1 would be (3t)^2 next to the square x-1: square-gap lemma")
    ok = _three_times_square(b)
    P(("q | x+1 branch: x^2-x+1 = 3w^2", str(b), ok))
    if ok:
        quartic = QuarticCurve(3, 3, 3)
        X, Y = 3 * u * u, 9 * u * is_perfect_square(b // 3)
        back = pull_x(quartic, IntegralPoint(X, Y))
        P(("pull back from Y^2 = X^3 + 3X^2 + 9X", f"({X}, {Y}) -> u = {back}", back == u))
        out.append(f"q | x+1: point ({X}, {Y}) forces u = 1, x = 2, and x^3-1 = 7 is not powerful")
    else:
        out.append("q | x+1: x^2-x+1 is not 3 times a square")
    pell = _three_times_square(x + 1)
    P(("q | x^2-x+1 branch: x+1 = 3v^2", str(x + 1), pell))
    if not pell:
        out.append("q | x^2-x+1: x+1 is not 3 times a square")
        return out
    k = recurrence_contains(U_SEQ, u)
    P(("u in u-sequence", f"u = {u}, index {k}", k is not None))
    sub = u % 3
    sign = 1 if sub == 1 else -1
    hv = (2 * u + sign) // 3
    l = recurrence_contains(H_SEQ, hv) if (2 * u + sign) % 3 == 0 else None
    P((f"subcase u = {sub} mod 3: (2u{'+' if sign > 0 else '-'}1)/3 in h-sequence",
       f"{hv}, index {l}", l is not None))
    if u == 1:
        out.append("q | x^2-x+1: u = 1 gives x = 2 and x^3-1 = 7 is not powerful")
    else:
        out.append("q | x^2-x+1: u_k = (3h_l -/+ 1)/2 only at k = l = 1 (sequence collision)")
    return out


def trace_case(x, rho_budget=DEFAULT_RHO_BUDGET):
    """Evaluate the case analysis for one candidate ``x >= 2``."""
    if x < 2:
        raise ValueError("x must be >= 2")
    res = x % 3
    a, b = x * x + x + 1, x * x - x + 1
    fm = _factor_product((x - 1, a), rho_budget)
    fp = _factor_product((x + 1, b), rho_budget)
    g1, g2 = gcd(x - 1, a), gcd(x + 1, b)
    preds = [
        ("x even", f"x = {x}", x % 2 == 0),
        ("gcd(x-1, x^2+x+1)", f"gcd({x - 1}, {a}) = {g1}", g1 == (3 if res == 1 else 1)),
        ("gcd(x+1, x^2-x+1)", f"gcd({x + 1}, {b}) = {g2}", g2 == (3 if res == 2 else 1)),
        ("x-1 perfect square", f"x-1 = {x - 1}", _square(x - 1)),
        ("x+1 perfect square", f"x+1 = {x + 1}", _square(x + 1)),
    ]
    p = as_prime_cube_times_square(fm.n, fm)
    q = as_prime_cube_times_square(fp.n, fp)
    preds.append(("x^3-1 = p^3 y^2", f"{fm.n} = {_fmt(fm)}", p is not None))
    preds.append(("x^3+1 = q^3 z^2", f"{fp.n} = {_fmt(fp)}", q is not None))
    case = {0: "case 1: x = 0 mod 3", 1: "case 2: x = 1 mod 3",
            2: "case 3: x = 2 mod 3"}[res]
    detail = _branches(x, preds)
    if p is None or q is None:
        failing = fm if p is None else fp
        side = "x^3-1" if p is None else "x^3+1"
        why = "is not powerful" if not is_powerful_f(failing) else "is not p^3 times a square"
        return CaseTrace(x, res, case, preds, Verdict.HYPOTHESIS_FAILS,
                         f"{side} = {failing.n} {why}", detail)
    return CaseTrace(x, res, case, preds, Verdict.COUNTEREXAMPLE,
                     f"x^3-1 = {p}^3 y^2 and x^3+1 = {q}^3 z^2", detail)


def is_powerful_f(f):
    return all(e >= 2 for _, e in f)
