from itertools import islice

import pytest
from hypothesis import given, strategies as st

from powerful_triples.core_arith import is_perfect_square
from powerful_triples.pell import (
    G_SEQ, H_SEQ, U_SEQ, V_SEQ, BoundExceeded, Recurrence2, base_solutions,
    cf_sqrt, fundamental_solution, general_solutions, recurrence_contains,
    recurrence_term, same_class, solutions)


def brute(D, N, y_max):
    out = []
    for y in range(1, y_max + 1):
        v = N + D * y * y
        if v > 0:
            x = is_perfect_square(v)
            if x is not None:
                out.append((x, y))
    return out


def brute_fundamental(D, y_max=10 ** 5):
    for y in range(1, y_max + 1):
        x = is_perfect_square(1 + D * y * y)
        if x is not None:
            return x, y
    return None


def test_cf_sqrt():
    assert cf_sqrt(3) == (1, (1, 2))
    assert cf_sqrt(2) == (1, (2,))
    assert cf_sqrt(7) == (2, (1, 1, 1, 4))
    with pytest.raises(ValueError):
        cf_sqrt(4)


def test_fundamental_examples():
    assert tuple(fundamental_solution(3)) == (2, 1)
    assert tuple(fundamental_solution(2)) == (3, 2)
    assert tuple(fundamental_solution(48)) == (7, 1)
    # odd period; the answer is far beyond small brute force
    assert tuple(fundamental_solution(61)) == (1766319049, 226153980)


def test_fundamental_matches_brute_force():
    for D in range(2, 200):
        if is_perfect_square(D) is not None:
            continue
        x, y = fundamental_solution(D)
        expected = brute_fundamental(D)
        if expected is None:
            assert y > 10 ** 5
        else:
            assert (x, y) == expected, D


@given(st.integers(2, 10 ** 6))
def test_fundamental_solves(D):
    if is_perfect_square(D) is not None:
        return
    x, y = fundamental_solution(D)
    assert x * x - D * y * y == 1 and y > 0


def test_solutions_stream():
    sols = [tuple(s) for s in islice(solutions(3), 3)]
    assert sols == [(2, 1), (7, 4), (26, 15)]
    assert 26 ** 2 - 3 * 15 ** 2 == 1
    assert next(solutions(2)).x == 3


def test_solutions_recurrence():
    sols = list(islice(solutions(3), 25))
    for a, b, c in zip(sols, sols[1:], sols[2:]):
        assert c.x == 4 * b.x - a.x and c.y == 4 * b.y - a.y
    assert [s.x for s in sols] == G_SEQ.first(25)
    assert [s.y for s in sols] == H_SEQ.first(25)


def test_base_solutions_examples():
    assert [tuple(s) for s in base_solutions(3, -2)] == [(1, 1)]
    assert [tuple(s) for s in base_solutions(3, 1)] == [(2, 1)]
    assert base_solutions(3, 2) == []
    assert brute(3, 2, 10 ** 4) == []


def test_general_solutions_examples():
    sols = [tuple(s) for s in islice(general_solutions(3, -2), 3)]
    assert sols == [(1, 1), (5, 3), (19, 11)]
    assert 19 ** 2 - 3 * 11 ** 2 == -2
    assert list(islice(general_solutions(2, 1), 10)) == list(islice(solutions(2), 10))


@pytest.mark.parametrize("D,N", [(3, 1), (3, -2), (2, 1)])
def test_first_25_valid(D, N):
    for s in islice(general_solutions(D, N), 25):
        assert s.x * s.x - D * s.y * s.y == N


@pytest.mark.parametrize("D,N", [(3, 1), (3, -2), (2, 1), (3, 2), (2, -1),
                                 (7, 2), (5, -4), (6, 3), (13, -3), (10, 9),
                                 (3, 22), (11, -7), (2, 49), (5, 11)])
def test_complete_against_brute_force(D, N):
    y_max = 10 ** 4
    expected = brute(D, N, y_max)
    got = []
    for s in general_solutions(D, N):
        # x^2 = N + D y^2, so the x-ordered stream is y-ordered too
        if s.y > y_max:
            break
        got.append((s.x, s.y))
    assert sorted(got) == sorted(expected)


def test_multiple_classes():
    # x^2 - 2y^2 = 7 has two classes: 3 + sqrt2 and 5 + 3 sqrt2
    reps = [tuple(s) for s in base_solutions(2, 7)]
    assert reps == [(3, 1), (5, 3)]
    assert not same_class(reps[0], reps[1], 2, 7)


def test_bound_ceiling():
    with pytest.raises(BoundExceeded):
        base_solutions(61, -10 ** 6, ceiling=1000)


def test_recurrence_term():
    assert recurrence_term(U_SEQ, 3) == 19
    assert recurrence_term(H_SEQ, 2) == 4
    assert recurrence_term(H_SEQ, 4) == 56 == 4 * 15 - 4


def test_recurrence_contains():
    assert recurrence_contains(U_SEQ, 71) == 4
    assert recurrence_contains(U_SEQ, 70) is None
    assert recurrence_contains(H_SEQ, 1) == 1
    with pytest.raises(ValueError):
        recurrence_contains(V_SEQ, 4)


def test_increasing_flag():
    assert U_SEQ.increasing and H_SEQ.increasing and G_SEQ.increasing
    assert not V_SEQ.increasing
    assert not Recurrence2(1, 1, 1, 2).increasing


@given(st.integers(2, 6), st.integers(1, 3), st.integers(1, 50), st.integers(1, 50))
def test_increasing_flag_is_sound(c, d, s1, s2):
    r = Recurrence2(c, d, s1, s2)
    if r.increasing:
        terms = r.first(60)
        assert all(a < b for a, b in zip(terms, terms[1:]))


def test_growth_and_identities():
    u = [None] + U_SEQ.first(201)
    h = [None] + H_SEQ.first(201)
    v = [None] + V_SEQ.first(201)
    assert v[1] == 0 and v[2] == 1
    for k in range(2, 201):
        assert u[k] > 3 * u[k - 1] and h[k] > 3 * h[k - 1]
        assert u[k] - h[k] == v[k] == h[k - 1]
        assert u[k] == h[k] + h[k - 1]
        # u_k < (3h_k - 1)/2 < u_{k+1}, doubled to stay in integers
        assert 2 * u[k] < 3 * h[k] - 1 < 2 * u[k + 1]


def test_u_sequence_is_pell_minus_two():
    sols = list(islice(general_solutions(3, -2), 30))
    assert [s.x for s in sols] == U_SEQ.first(30)
    assert [s.index for s in sols] == list(range(1, 31))
