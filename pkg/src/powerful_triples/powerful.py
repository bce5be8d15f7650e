"""Powerful (squareful) numbers: predicate, a^2 b^3 form, enumeration, runs."""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import islice

from .core_arith import factorize, iroot, isqrt
from .pell import solutions


@dataclass(frozen=True)
class PowerfulForm:
    a: int
    b: int
    n: int


@dataclass(frozen=True)
class ConsecutiveRun:
    start: int
    length: int

    @property
    def members(self):
        return list(range(self.start, self.start + self.length))


def is_powerful(n, **kw):
    if n < 1:
        raise ValueError("n must be positive")
    return all(e >= 2 for _, e in factorize(n, **kw))


def is_squarefree(n):
    return all(e == 1 for _, e in factorize(n))


def powerful_decomposition(n, **kw):
    """The unique ``(a, b)`` with ``n == a**2 * b**3`` and b squarefree."""
    f = factorize(n, **kw)
    if any(e < 2 for _, e in f):
        raise ValueError(f"{n} is not powerful")
    a = b = 1
    for p, e in f:
        if e % 2:
            b *= p
            a *= p ** ((e - 3) // 2)
        else:
            a *= p ** (e // 2)
    return PowerfulForm(a, b, n)


def _squarefree_upto(m):
    flags = bytearray([1]) * (m + 1)
    for i in range(2, isqrt(m) + 1):
        flags[i * i::i * i] = bytearray(len(range(i * i, m + 1, i * i)))
    return [b for b in range(1, m + 1) if flags[b]]


def enumerate_powerful(limit, start=1):
    """Yield the powerful numbers in ``[start, limit]`` in ascending order.

    One stream ``a^2 * b^3`` per squarefree b, merged through a heap. The
    representation is unique, so nothing is emitted twice. Memory grows with
    the number of streams (about limit**(1/3)), not with the output.
    """
    if limit < 1:
        return
    heap = []
    for b in _squarefree_upto(iroot(limit, 3)):
        cube = b ** 3
        a = max(1, isqrt((start - 1) // cube))
        while a * a * cube < start:
            a += 1
        if a * a * cube <= limit:
            heap.append((a * a * cube, a, cube))
    heapq.heapify(heap)
    while heap:
        n, a, cube = heap[0]
        yield n
        a += 1
        nxt = a * a * cube
        if nxt <= limit:
            heapq.heapreplace(heap, (nxt, a, cube))
        else:
            heapq.heappop(heap)


def runs_in_stream(stream, min_length=2):
    """Maximal runs of consecutive integers in an ascending stream."""
    run_start = prev = None
    for n in stream:
        if prev is not None and n == prev + 1:
            prev = n
            continue
        if run_start is not None and prev - run_start + 1 >= min_length:
            yield ConsecutiveRun(run_start, prev - run_start + 1)
        run_start = prev = n
    if run_start is not None and prev - run_start + 1 >= min_length:
        yield ConsecutiveRun(run_start, prev - run_start + 1)


def find_consecutive_runs(limit, min_length=2):
    """Maximal runs of powerful numbers lying inside ``[1, limit]``.

    ``limit + 1`` is scanned too, so a run that continues past the limit is
    not reported in truncated form.
    """
    return [r for r in runs_in_stream(enumerate_powerful(limit + 1), min_length)
            if r.start + r.length - 1 <= limit]


def pairs_from_pell(count):
    """``(2y^2, x^2)`` for the first solutions of x^2 - 2y^2 = 1."""
    return [(2 * s.y * s.y, s.x * s.x) for s in islice(solutions(2), count)]


def pell_pair_is_powerful(pair):
    """Check both members of a Pell pair without factoring.

    x^2 is a square; 2y^2 with y = 2y' is 2^3 * y'^2.
    """
    low, high = pair
    if high - low != 1 or isqrt(high) ** 2 != high:
        return False
    y = isqrt(low // 2)
    return 2 * y * y == low and y % 2 == 0 and 8 * (y // 2) ** 2 == low


def odd_valuation_primes(n, **kw):
    return {p for p, e in factorize(n, **kw) if e % 2}


def as_prime_cube_times_square(n, factorization=None, **kw):
    """Prime p with ``n == p**3 * y**2`` for some y >= 1, else None."""
    f = factorization or factorize(n, **kw)
    odd = [(p, e) for p, e in f if e % 2]
    if len(odd) == 1 and odd[0][1] >= 3:
        return odd[0][0]
    return None
