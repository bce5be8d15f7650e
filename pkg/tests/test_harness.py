from collections import Counter

import pytest

from powerful_triples.core_arith import factorize, is_perfect_square
from powerful_triples.harness import (
    Verdict, VerificationReport, check_gcd_identities, check_lemma_suite,
    check_pell_bridge, check_sequence_collision, corollary_form,
    find_triples_scan, trace_case, verify_corollary, verify_theorem)
from powerful_triples.powerful import as_prime_cube_times_square


def by_name(trace):
    return {n: (s, v) for n, s, v in trace.predicates}


def test_lemma_suite_small():
    r = check_lemma_suite(1000)
    assert r.verified and r.examined == 1000
    assert r.tally["3-adic x^2+x+1"] == 334 and r.tally["3-adic x^2-x+1"] == 333


def test_lemma_instances():
    # x = 4: 16 + 4 + 1 = 21 = 3 * 7; x = 2: 4 - 2 + 1 = 3; x = 1: 3
    assert factorize(21).exponent(3) == 1
    assert factorize(3).exponent(3) == 1


def test_gcd_suite_small():
    r = check_gcd_identities(2000)
    assert r.verified and r.tally["odd u"] == 1000


def test_gcd_suite_partitioned_matches_serial():
    a = check_gcd_identities(5000, threads=1)
    b = check_gcd_identities(5000, threads=3)
    assert a.examined == b.examined and a.tally == b.tally and b.verified


def test_theorem_small_cases():
    # x = 2: 7 is not p^3 y^2; x = 3: 28 = 2^2 * 7
    assert as_prime_cube_times_square(7) is None
    assert factorize(28).factors == ((2, 2), (7, 1))
    assert as_prime_cube_times_square(28) is None
    r = verify_theorem(100)
    assert r.verified and r.examined == 99


def _brute_forms(x_max, sign):
    """x with x^3 + sign = p^3 y^2, found by enumerating p and y."""
    top = x_max ** 3 + 1
    primes = [p for p in range(2, x_max + 1) if all(p % d for d in range(2, int(p ** 0.5) + 1))]
    cubes = {x ** 3: x for x in range(2, x_max + 1)}
    hits = set()
    for p in primes:
        y = 1
        while p ** 3 * y * y <= top:
            x = cubes.get(p ** 3 * y * y - sign)
            if x is not None:
                hits.add(x)
            y += 1
    return hits


def test_theorem_brute_cross_check():
    x_max = 2000
    minus, plus = _brute_forms(x_max, -1), _brute_forms(x_max, 1)
    assert minus == {x for x in range(2, x_max + 1) if as_prime_cube_times_square(x ** 3 - 1)}
    assert plus == {x for x in range(2, x_max + 1) if as_prime_cube_times_square(x ** 3 + 1)}
    assert plus  # e.g. 23^3 + 1 = 2^3 * 3^2 * 13^2
    assert not (minus & plus)
    r = verify_theorem(x_max)
    assert r.tally["x^3-1 = p^3 y^2"] == len(minus)
    assert r.tally["x^3+1 = q^3 z^2"] == len(plus)


def test_theorem_reports_implication_hits():
    r = verify_theorem(3000)
    assert r.tally["minus-side implication hits"] == 0
    assert r.tally["plus-side implication hits"] == 0
    assert r.tally["x=0 mod 3"] + r.tally["x=1 mod 3"] + r.tally["x=2 mod 3"] == r.examined


def test_theorem_incomplete_is_flagged(monkeypatch):
    from powerful_triples import core_arith, harness
    real = harness.factorize

    def stubborn(n, rho_budget=core_arith.DEFAULT_RHO_BUDGET, **kw):
        if n == 50 * 50 + 50 + 1:
            raise core_arith.Unfactored(n, n, rho_budget)
        return real(n, rho_budget=rho_budget, **kw)

    monkeypatch.setattr(harness, "factorize", stubborn)
    r = verify_theorem(100)
    # 2551 = 50^2 + 50 + 1 = 51^2 - 51 + 1
    assert r.incomplete == [{"x": 50, "cofactor": 2551}, {"x": 51, "cofactor": 2551}]
    assert r.status == "incomplete" and r.examined == 99


def test_corollary_form():
    assert not corollary_form(factorize(63))
    assert corollary_form(factorize(2 ** 3 * 3 ** 3 * 25))
    assert corollary_form(factorize(2 ** 6 * 49))
    assert not corollary_form(factorize(2 ** 3 * 3 * 25))
    assert not corollary_form(factorize(2 ** 4 * 3 ** 2))


def test_corollary_small():
    r = verify_corollary(50)
    assert r.verified
    assert any("x=1" in n and "63 = 3^2 * 7" in n for n in r.notes)


def test_collision():
    r = check_sequence_collision(200)
    assert r.verified
    assert r.tally["minus collisions"] == 1 and r.tally["plus collisions"] == 0
    for key in ("u_k = h_k + h_{k-1}", "v_k = h_{k-1}", "u_k > 3u_{k-1}",
                "h_k > 3h_{k-1}", "interleaving chain"):
        assert r.tally[key] == 199


def test_collision_l2_not_integer():
    # (3 * 4 - 1) / 2 = 5.5, so u_2 = 5 cannot match at l = 2
    assert (3 * 4 - 1) % 2 == 1


def test_pell_bridge():
    r = check_pell_bridge()
    assert r.verified
    assert r.tally["u^2+u+1 = 3w^2 hits"] > 0 and r.tally["u^2-u+1 = 3w^2 hits"] > 0


def test_subcase_algebra_by_scan():
    for u in range(1, 10 ** 4 + 1):
        q, rem = divmod(u * u + u + 1, 3)
        if rem == 0 and is_perfect_square(q) is not None:
            w1 = is_perfect_square(q)
            assert (2 * u + 1) % 3 == 0
            assert (2 * w1) ** 2 - 3 * ((2 * u + 1) // 3) ** 2 == 1


def test_substitution_identities():
    for u in range(1, 10 ** 4 + 1):
        s = u * u
        assert (s + 1) ** 2 - (s + 1) + 1 == s * s + s + 1 == (s + u + 1) * (s - u + 1)
        assert (s - 1) ** 2 + (s - 1) + 1 == s * s - s + 1


def test_triples_scan_small():
    r = find_triples_scan(10 ** 4)
    assert r.verified
    assert 9800 in r.details["pair_starts"]
    assert factorize(9800).factors == ((2, 3), (5, 2), (7, 2)) and 99 ** 2 == 9801


def test_triples_scan_1e6():
    r = find_triples_scan(10 ** 6)
    assert r.verified
    assert r.details["pair_starts"][:2] == [8, 288]


def test_trace_examples():
    t = trace_case(2)
    assert t.residue == 2 and t.case.startswith("case 3")
    assert t.verdict is Verdict.HYPOTHESIS_FAILS and "7" in t.reference
    t = trace_case(3)
    p = by_name(t)
    assert t.residue == 0 and t.case.startswith("case 1")
    assert p["gcd(x-1, x^2+x+1)"] == ("gcd(2, 13) = 1", True)
    assert p["gcd(x+1, x^2-x+1)"] == ("gcd(4, 7) = 1", True)
    t = trace_case(6)
    assert by_name(t)["x-1 perfect square"] == ("x-1 = 5", False)


def test_trace_required_predicates():
    for x in range(2, 300):
        names = [n for n, _, _ in trace_case(x).predicates]
        for need in ("x even", "gcd(x-1, x^2+x+1)", "gcd(x+1, x^2-x+1)",
                     "x-1 perfect square", "x+1 perfect square",
                     "x^3-1 = p^3 y^2", "x^3+1 = q^3 z^2"):
            assert need in names


def test_trace_agrees_with_theorem():
    r = verify_theorem(1500)
    bad = {c["x"] for c in r.counterexamples if "x" in c and "p" in c and "q" in c}
    for x in range(2, 1501):
        t = trace_case(x)
        assert (t.verdict is Verdict.COUNTEREXAMPLE) == (x in bad)
        p = as_prime_cube_times_square(x ** 3 - 1)
        q = as_prime_cube_times_square(x ** 3 + 1)
        assert (t.verdict is Verdict.HYPOTHESIS_FAILS) == (p is None or q is None)


def test_trace_gcd_predicates_always_true():
    for x in range(2, 2000):
        p = by_name(trace_case(x))
        assert p["gcd(x-1, x^2+x+1)"][1] and p["gcd(x+1, x^2-x+1)"][1]


def test_report_merge_is_associative():
    def rep(lo, hi, bad):
        r = VerificationReport("t", lo, hi, examined=hi - lo + 1)
        r.tally.update({"a": lo, "b": 1})
        r.counterexamples = bad
        return r
    a, b, c = rep(1, 5, []), rep(6, 9, [{"x": 7}]), rep(10, 12, [])
    left, right = a.merge(b).merge(c), a.merge(b.merge(c))
    assert left.to_dict() == right.to_dict()
    assert left.status == "counterexample" and left.examined == 12
    assert left.tally == Counter({"a": 17, "b": 3})
