"""Pell and generalized Pell equations, plus second-order recurrences.

Solutions are exact Python ints. ``x + y*sqrt(D)`` is handled as the
pair ``(x, y)`` throughout.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

from .core_arith import is_perfect_square, isqrt

DEFAULT_SEARCH_CEILING = 10 ** 7


class BoundExceeded(ValueError):
    """Class-representative search would scan more than the ceiling."""


@dataclass(frozen=True, order=True)
class PellSolution:
    x: int
    y: int
    index: int = field(default=1, compare=False)

    def __iter__(self):
        return iter((self.x, self.y))


def _check_D(D):
    if D < 2 or is_perfect_square(D) is not None:
        raise ValueError(f"D={D} must be a non-square integer >= 2")


def cf_sqrt(D):
    """Continued fraction of sqrt(D) as ``(a0, period)`` with minimal period."""
    _check_D(D)
    a0 = isqrt(D)
    m, d, a = 0, 1, a0
    period = []
    while a != 2 * a0:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        period.append(a)
    return a0, tuple(period)


def _mul(u, v, D):
    return (u[0] * v[0] + D * u[1] * v[1], u[0] * v[1] + u[1] * v[0])


def fundamental_solution(D):
    """Minimal positive solution of x^2 - D*y^2 = 1 from the convergents.

    With period length L the solution is the convergent p/q at index L-1
    when L is even, otherwise at index 2L-1.
    """
    a0, period = cf_sqrt(D)
    L = len(period)
    stop = L - 1 if L % 2 == 0 else 2 * L - 1
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    for i in range(stop):
        a = period[i % L]
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
    assert p * p - D * q * q == 1
    return PellSolution(p, q, 1)


def solutions(D):
    """All positive solutions of x^2 - D*y^2 = 1, ascending."""
    unit = tuple(fundamental_solution(D))
    cur = unit
    for k in itertools.count(1):
        yield PellSolution(cur[0], cur[1], k)
        cur = _mul(cur, unit, D)


def _sign(x, y, D):
    """Sign of the real number x + y*sqrt(D)."""
    if x >= 0 and y >= 0:
        return 0 if x == 0 and y == 0 else 1
    if x <= 0 and y <= 0:
        return -1
    lhs, rhs = x * x, D * y * y
    if lhs == rhs:
        return 0
    big = x if lhs > rhs else y
    return 1 if big > 0 else -1


def _minimal_positive(x, y, D, unit):
    """Smallest member of the class of x + y*sqrt(D) with x, y > 0."""
    if _sign(x, y, D) < 0:
        x, y = -x, -y
    conj = (unit[0], -unit[1])
    cur = (x, y)
    while not (cur[0] > 0 and cur[1] > 0):
        cur = _mul(cur, unit, D)
    while True:
        prev = _mul(cur, conj, D)
        if prev[0] > 0 and prev[1] > 0:
            cur = prev
        else:
            return cur


def same_class(s, t, D, N):
    """True when s and t differ by a unit factor (up to sign)."""
    (x, y), (xx, yy) = s, t
    m = abs(N)
    return (x * xx - D * y * yy) % m == 0 and (x * yy - xx * y) % m == 0


def class_search_range(D, N, unit=None):
    """Inclusive y-range that holds a representative of every class."""
    x1, y1 = unit or tuple(fundamental_solution(D))
    if N > 0:
        # y <= y1 * sqrt(N (x1 + 1) / (2D))
        return 0, y1 * isqrt(N * (x1 + 1) // (2 * D)) + y1
    lo = isqrt(-N // D)
    return lo, y1 * isqrt(-N * (x1 - 1) // (2 * D)) + y1 + 1


def base_solutions(D, N, ceiling=DEFAULT_SEARCH_CEILING):
    """Minimal positive solution of each class of x^2 - D*y^2 = N.

    Returns ``[]`` when the equation has no integer solutions. The upper
    search bounds are padded by ``y1`` to absorb the integer square roots.
    """
    _check_D(D)
    if N == 0:
        raise ValueError("N must be nonzero")
    unit = tuple(fundamental_solution(D))
    lo, hi = class_search_range(D, N, unit)
    if hi - lo > ceiling:
        raise BoundExceeded(
            f"class search for D={D}, N={N} spans {hi - lo} values of y")
    reps = []
    for y in range(lo, hi + 1):
        rhs = N + D * y * y
        if rhs < 0:
            continue
        x = is_perfect_square(rhs)
        if x is None:
            continue
        for sx in {x, -x}:
            cand = _minimal_positive(sx, y, D, unit)
            if not any(same_class(cand, r, D, N) for r in reps):
                reps.append(cand)
    return [PellSolution(x, y, 1) for x, y in sorted(reps)]


def general_solutions(D, N, ceiling=DEFAULT_SEARCH_CEILING):
    """All positive solutions of x^2 - D*y^2 = N, ascending by (x, y).

    ``index`` counts position within the solution's own class, starting at
    1 for the minimal positive member.
    """
    unit = tuple(fundamental_solution(D))
    heap = [(r.x, r.y, 1, c) for c, r in enumerate(base_solutions(D, N, ceiling))]
    heapq.heapify(heap)
    while heap:
        x, y, k, c = heapq.heappop(heap)
        yield PellSolution(x, y, k)
        nx, ny = _mul((x, y), unit, D)
        heapq.heappush(heap, (nx, ny, k + 1, c))


@dataclass(frozen=True)
class Recurrence2:
    """``a_k = c*a_{k-1} - d*a_{k-2}`` with ``a_1 = s1``, ``a_2 = s2``."""

    c: int
    d: int
    s1: int
    s2: int
    name: str = field(default="", compare=False)

    @property
    def increasing(self):
        # positivity plus c - 1 >= d makes each difference >= d * previous one
        return self.s2 > self.s1 > 0 and self.c >= self.d + 1 >= 2

    def terms(self, start=1):
        a, b = self.s1, self.s2
        k = 1
        while True:
            if k >= start:
                yield k, a
            a, b = b, self.c * b - self.d * a
            k += 1

    def first(self, count):
        return [a for _, a in itertools.islice(self.terms(), count)]


# the sequences that appear in the proof
U_SEQ = Recurrence2(4, 1, 1, 5, "u")   # u^2 - 3v^2 = -2
H_SEQ = Recurrence2(4, 1, 1, 4, "h")   # y-coordinates of x^2 - 3y^2 = 1
G_SEQ = Recurrence2(4, 1, 2, 7, "g")   # x-coordinates of x^2 - 3y^2 = 1
V_SEQ = Recurrence2(4, 1, 0, 1, "v")   # u_k - h_k


def recurrence_term(r, k):
    if k < 1:
        raise ValueError("index starts at 1")
    a, b = r.s1, r.s2
    for _ in range(k - 1):
        a, b = b, r.c * b - r.d * a
    return a


def recurrence_contains(r, v):
    """Index k with ``a_k == v``, or None. Needs a strictly increasing r."""
    if not r.increasing:
        raise ValueError(f"{r} is not known to be strictly increasing")
    for k, a in r.terms():
        if a == v:
            return k
        if a > v:
            return None
