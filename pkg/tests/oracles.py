"""Independent oracles the tests check the library against.

Everything here is deliberately naive: trial division, direct big-integer
factorization, floor sums written out from the definition, and grid
brute force. None of it shares code with the package.
"""

from __future__ import annotations

import math
from fractions import Fraction


def trial_division_primes(limit: int) -> list[int]:
    out = []
    for x in range(2, limit + 1):
        if all(x % d for d in range(2, math.isqrt(x) + 1)):
            out.append(x)
    return out


def is_prime_oracle(x: int) -> bool:
    if x < 2:
        return False
    return all(x % d for d in range(2, math.isqrt(x) + 1))


def prime_exponent(x: int, p: int) -> int:
    """Exponent of p in x by repeated division."""
    e = 0
    while x and x % p == 0:
        x //= p
        e += 1
    return e


def comb_exponent(n: int, k: int, p: int) -> int:
    """Exponent of p in C(n, k), by factoring the big integer."""
    return prime_exponent(math.comb(n, k), p)


def small_prime_part(n: int, k: int, primes: list[int]) -> int:
    """u(n, k) by factoring C(n, k) over the given primes <= k."""
    c = math.comb(n, k)
    u = 1
    for p in primes:
        if p > k:
            break
        while c % p == 0:
            c //= p
            u *= p
    return u


def legendre_valuation(n: int, k: int, p: int) -> int:
    """Triple floor sum, written out from the definition."""
    total = 0
    q = p
    while q <= n:
        total += n // q - (n - k) // q - k // q
        q *= p
    return total


def f_oracle(n: int, primes: list[int], bound: int) -> int | None:
    """f(n) from the definition: exact u(n, k) versus n^2, k ascending.

    ``primes`` must include every prime <= bound; the scan fails loudly if
    f(n) would exceed the bound rather than silently dropping primes.
    """
    nn = n * n
    for k in range(n + 1):
        if k > bound:
            raise AssertionError(f"f_oracle bound {bound} too small for n={n}")
        u = 1
        for p in primes:
            if p > k:
                break
            v = legendre_valuation(n, k, p)
            if v:
                u *= p**v
        if u > nn:
            return k
    return None


def grid_discrepancy(points: list[float], steps: int = 1024) -> float:
    """Brute-force sup of |count/k - length| over closed grid intervals."""
    import numpy as np

    xs = np.sort(np.asarray(points, dtype=np.float64))
    k = xs.size
    grid = np.arange(steps + 1) / steps
    le = np.searchsorted(xs, grid, side="right")  # points <= grid value
    lt = np.searchsorted(xs, grid, side="left")  # points <  grid value
    i, j = np.triu_indices(steps + 1)
    counts = le[j] - lt[i]
    lengths = (j - i) / steps
    return float(np.max(np.abs(counts / k - lengths)))


def representations_bruteforce(n: int, members: set[int]) -> list[tuple[int, int]]:
    return [(a, n - a) for a in range(2, n // 2 + 1) if a in members and (n - a) in members]
