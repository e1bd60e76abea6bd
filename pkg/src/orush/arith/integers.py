"""Integer helpers: trial-division factoring, valuations, radicals.

Python's ``int`` is already an arbitrary-precision signed integer, so it is
used directly as the big-integer type everywhere in the package.
"""
from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

from orush.errors import BudgetExceededError, PreconditionError

DEFAULT_TRIAL_BUDGET = 10**6
PRIMALITY_BOUND = 2**32


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test.

    Candidate divisors are only tried up to ``2**32``; any ``n`` whose square
    root exceeds that bound is rejected with :class:`BudgetExceededError`.
    """
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    limit = isqrt(n)
    if limit > PRIMALITY_BOUND:
        raise BudgetExceededError(f"primality of {n} needs divisors beyond 2**32")
    k = 5
    while k <= limit:
        if n % k == 0 or n % (k + 2) == 0:
            return False
        k += 6
    return True


def factorize(n: int, budget: int = DEFAULT_TRIAL_BUDGET) -> dict[int, int]:
    """Return ``{prime: exponent}`` for ``|n|``; trial divisors stop at ``budget``.

    Raises :class:`BudgetExceededError` when a cofactor is left that cannot be
    certified prime by divisors up to ``budget``.
    """
    n = abs(n)
    if n == 0:
        raise PreconditionError("cannot factor 0")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        if p > budget:
            raise BudgetExceededError(f"cofactor {n} not factored within trial budget {budget}")
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def valuation(n: int, p: int) -> float | int:
    """p-adic valuation of an integer; ``inf`` for zero."""
    if n == 0:
        return float("inf")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def radical(n: int, budget: int = DEFAULT_TRIAL_BUDGET) -> int:
    """Product of the distinct primes dividing ``n`` (``rad(0) = 0``)."""
    if n == 0:
        return 0
    r = 1
    for p in factorize(n, budget):
        r *= p
    return r


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factorize(n).values())


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, flag in enumerate(sieve) if flag]


def primorial(n: int) -> int:
    out = 1
    for p in primes_up_to(n):
        out *= p
    return out


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def lcm(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return abs(a * b) // gcd(a, b)


def sqrt_mod(a: int, p: int) -> int | None:
    """Smallest square root of ``a`` modulo prime ``p`` by exhaustive search."""
    a %= p
    for r in range(p):
        if r * r % p == a:
            return r
    return None
