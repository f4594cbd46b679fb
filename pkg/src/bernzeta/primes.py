"""Prime tests, sieves, and small-budget factorization."""

from __future__ import annotations

import math

# Deterministic Miller-Rabin witness set for n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def is_prime(n: int) -> bool:
    """Miller-Rabin primality test; deterministic below ~3.3e24,
    strong probable prime (extra fixed bases) beyond that."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES
    if n >= _MR_LIMIT:
        bases = _MR_BASES + tuple(41 + 2 * i for i in range(20))
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    """All primes <= n by sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, b in enumerate(sieve) if b]


def odd_primes_upto(n: int) -> list[int]:
    return [p for p in primes_upto(n) if p > 2]


def factorize(n: int) -> list[tuple[int, int]]:
    """Full prime factorization of n >= 1 by trial division.

    Intended for desk-scale n (indices, not Bernoulli numerators); raises
    if a composite cofactor survives the trial bound.
    """
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    for p in (2, 3, 5):
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
    f = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while f * f <= n:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            out.append((f, e))
        f += wheel[i]
        i = (i + 1) % 8
    if n > 1:
        out.append((n, 1))
    return out


def factor_with_budget(n: int, trial_limit: int = 10**6) -> tuple[dict[int, int], int]:
    """Partial factorization: trial division up to trial_limit, then a
    primality test on what is left.

    Returns (factors, cofactor): cofactor is 1 when the factorization is
    complete, otherwise the unfactored part (prime cofactors are moved
    into factors, so a cofactor > 1 is composite and unresolved).
    """
    if n < 1:
        raise ValueError("n must be positive")
    factors: dict[int, int] = {}
    for p in primes_upto(min(trial_limit, math.isqrt(n) + 1)):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        if n == 1:
            break
    if n > 1:
        if n <= trial_limit * trial_limit or is_prime(n):
            factors[n] = factors.get(n, 0) + 1
            n = 1
    return factors, n
