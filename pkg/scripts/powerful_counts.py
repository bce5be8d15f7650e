"""Count powerful numbers up to 10^k and compare with c*sqrt(N).

The leading constant is zeta(3/2)/zeta(3) ~ 2.1733; the second-order term
zeta(2/3)/zeta(2) * N^(1/3) is negative, so small N sit below it.
"""
import argparse
import math
import time

from powerful_triples.powerful import enumerate_powerful

C1 = 2.173254
C2 = -1.487964

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--kmax", type=int, default=12)
    args = ap.parse_args()
    print(f"{'N':>8} {'count':>10} {'count/sqrtN':>12} {'two-term':>12} {'sec':>7}")
    for k in range(2, args.kmax + 1, 2):
        N = 10 ** k
        t0 = time.perf_counter()
        count = sum(1 for _ in enumerate_powerful(N))
        approx = C1 * math.sqrt(N) + C2 * N ** (1 / 3)
        print(f"10^{k:<5} {count:>10} {count / math.isqrt(N):>12.5f} "
              f"{approx:>12.0f} {time.perf_counter() - t0:>7.2f}")
