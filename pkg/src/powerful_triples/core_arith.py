"""Exact integer primitives: roots, primality, factorization, valuations.

Everything here works on Python ints of any size and never touches floats.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

__all__ = [
    "Factorization", "Unfactored", "isqrt", "iroot", "is_perfect_square",
    "is_perfect_cube", "padic_valuation", "is_prime", "factorize", "gcd",
    "merge_factorizations", "DEFAULT_RHO_BUDGET", "DETERMINISTIC_MR_LIMIT",
]

TRIAL_LIMIT = 10_000
DEFAULT_RHO_BUDGET = 1 << 20

# Sorenson & Webster: the first 13 primes as Miller-Rabin bases decide
# every n below this bound.
DETERMINISTIC_MR_LIMIT = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
PROBABILISTIC_ROUNDS = 40


def _small_primes(limit):
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


SMALL_PRIMES = tuple(_small_primes(TRIAL_LIMIT))
_SMALL_PRIME_SET = frozenset(SMALL_PRIMES)


class Unfactored(ArithmeticError):
    """A composite cofactor survived the rho iteration budget."""

    def __init__(self, n, cofactor, budget):
        super().__init__(
            f"could not split composite cofactor {cofactor} of {n} "
            f"within rho budget {budget}")
        self.n = n
        self.cofactor = cofactor
        self.budget = budget


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ascending ``(prime, exponent)`` pairs."""

    n: int
    factors: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors!r}")
            last = p
            prod *= p ** e
        if prod != self.n:
            raise ValueError(f"factors multiply to {prod}, not {self.n}")

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def as_dict(self):
        return dict(self.factors)

    def exponent(self, p):
        return self.as_dict().get(p, 0)

    @classmethod
    def from_counts(cls, n, counts):
        return cls(n, tuple(sorted((p, e) for p, e in counts.items() if e)))


def isqrt(n):
    """Floor square root via Newton iteration."""
    if n < 0:
        raise ValueError("isqrt of negative number")
    if n == 0:
        return 0
    # start above the root so the iteration decreases monotonically
    x = 1 << ((n.bit_length() + 1) // 2)
    while True:
        y = (x + n // x) >> 1
        if y >= x:
            break
        x = y
    while x * x > n:
        x -= 1
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x


def iroot(n, k):
    """Floor k-th root of ``n >= 0``."""
    if n < 0:
        raise ValueError("iroot of negative number")
    if k < 1:
        raise ValueError("root degree must be positive")
    if n < 2 or k == 1:
        return n
    x = 1 << (-(-n.bit_length() // k))
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def is_perfect_square(n):
    """Return ``r`` with ``r*r == n``, or None."""
    if n < 0:
        raise ValueError("perfect-square test needs n >= 0")
    # squares mod 16 are 0, 1, 4, 9
    if (n & 15) not in (0, 1, 4, 9):
        return None
    r = isqrt(n)
    return r if r * r == n else None


def is_perfect_cube(n):
    if n < 1:
        raise ValueError("perfect-cube test needs n >= 1")
    r = iroot(n, 3)
    return r if r * r * r == n else None


def gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _strong_probable_prime(n, a, d, s):
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _jacobi(a, n):
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_probable_prime(n):
    """Strong Lucas test with Selfridge's parameter choice."""
    if is_perfect_square(n) is not None:
        return False
    D = 5
    while True:
        j = _jacobi(D, n)
        if j == -1:
            break
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    half = (n + 1) // 2  # inverse of 2 mod n
    U, V, Qk = 0, 2, 1
    for bit in bin(d)[2:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * half % n, (D * U + P * V) * half % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def is_prime(n, rng=None):
    """Primality test.

    Deterministic below ``DETERMINISTIC_MR_LIMIT`` (~3.3e24). Above it,
    40 random strong-probable-prime rounds plus a strong Lucas test; no
    composite is known to pass Miller-Rabin to base 2 together with the
    strong Lucas test, and the random rounds alone leave error below 4**-40.
    """
    if n < 2:
        return False
    if n in _SMALL_PRIME_SET:
        return True
    for p in SMALL_PRIMES[:25]:
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < DETERMINISTIC_MR_LIMIT:
        return all(_strong_probable_prime(n, a, d, s) for a in _MR_BASES)
    if not _strong_probable_prime(n, 2, d, s):
        return False
    rng = rng or random.Random(n)
    for _ in range(PROBABILISTIC_ROUNDS):
        if not _strong_probable_prime(n, rng.randrange(2, n - 1), d, s):
            return False
    return _strong_lucas_probable_prime(n)


def padic_valuation(p, n):
    """Exponent of the prime ``p`` in ``n``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("valuation needs n >= 1")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _brent(n, c, y0, budget):
    """One Brent-rho attempt; returns a nontrivial factor or None."""
    m = 128
    y, r, q = y0, 1, 1
    g = 1
    steps = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        steps += r
        r <<= 1
        if steps > budget:
            return None
    if g == n:
        # backtrack one step at a time from the last saved state
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _split(n, budget, rng):
    spent = 0
    while spent <= budget:
        c = rng.randrange(1, n - 1)
        y0 = rng.randrange(0, n)
        attempt = max(1, min(budget - spent, budget // 4 + 1))
        g = _brent(n, c, y0, attempt)
        spent += attempt
        if g is not None:
            return g
    return None


def _perfect_power(m):
    """Largest k with m == r**k, as ``(r, k)``."""
    for k in SMALL_PRIMES:
        if 1 << k > m:
            break
        r = iroot(m, k)
        if r ** k == m:
            inner, j = _perfect_power(r)
            return inner, j * k
    return m, 1


def factorize(n, rho_budget=DEFAULT_RHO_BUDGET, seed=0):
    """Complete prime factorization of ``n >= 1``.

    Trial division by primes below 10**4, then Brent's rho with random
    restarts. Raises :class:`Unfactored` when a composite cofactor resists
    ``rho_budget`` iterations; never returns a partial answer.
    """
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    counts = {}
    m = n
    for p in SMALL_PRIMES:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            counts[p] = e
    if m == 1:
        return Factorization.from_counts(n, counts)
    rng = random.Random(seed)
    stack = [m]
    while stack:
        m = stack.pop()
        # no factor below TRIAL_LIMIT survives, so small cofactors are prime
        if m < TRIAL_LIMIT * TRIAL_LIMIT or is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        root, k = _perfect_power(m)
        if k > 1:
            stack += [root] * k
            continue
        g = _split(m, rho_budget, rng)
        if g is None:
            raise Unfactored(n, m, rho_budget)
        stack += [g, m // g]
    return Factorization.from_counts(n, counts)


def merge_factorizations(*parts):
    """Factorization of a product from factorizations of its factors."""
    counts = {}
    n = 1
    for f in parts:
        n *= f.n
        for p, e in f:
            counts[p] = counts.get(p, 0) + e
    return Factorization.from_counts(n, counts)
