"""Exact Bernoulli numbers and their modular reductions.

Two independent production methods live here: an integer tangent-number
recurrence for batches of small indices, and rounding of tau_n * zeta(n)
(tau_n = 2 V_n n!/(2pi)^n) inside a certified interval for large isolated
indices. The denominator V_n and the trivial numerator factor come from
the classical divisibility structure.
"""

from __future__ import annotations

import math
import os
import threading
from fractions import Fraction

from .errors import PrecisionError
from .fixedmath import allow_big_int_str, ceil_div, pi_bounds, pow_bounds, zeta_bounds
from .primes import factorize, is_prime

RECURRENCE_LIMIT = 3072  # below this, batch tangent-number computation wins
_BATCH_MIN = 256


class BernoulliCache:
    """Map n -> B_n with optional file persistence.

    File format: one record per line, "n<TAB>numerator<TAB>denominator" in
    decimal. A missing file is an empty cache. Writes are serialized;
    reads need no lock (dict reads are atomic enough for our use).
    """

    def __init__(self, path: str | None = None):
        self.path = path
        self._data: dict[int, Fraction] = {}
        self._lock = threading.Lock()
        if path and os.path.exists(path):
            allow_big_int_str()
            with open(path) as fh:
                for line in fh:
                    parts = line.split()
                    if len(parts) != 3:
                        continue
                    n, num, den = (int(x) for x in parts)
                    self._data[n] = Fraction(num, den)

    def __len__(self) -> int:
        return len(self._data)

    def get(self, n: int) -> Fraction | None:
        return self._data.get(n)

    def put(self, n: int, value: Fraction) -> None:
        if n > 0 and n % 2 == 0 and value == 0:
            raise ValueError(f"refusing to cache B_{n} = 0 for even n")
        with self._lock:
            if n in self._data:
                return
            self._data[n] = value
            if self.path:
                allow_big_int_str()
                with open(self.path, "a") as fh:
                    fh.write(f"{n}\t{value.numerator}\t{value.denominator}\n")


_default_cache = BernoulliCache()


def default_cache() -> BernoulliCache:
    return _default_cache


def _tangent_batch(limit: int) -> list[int]:
    """Tangent numbers T_1..T_{limit/2} (Knuth-Buckholtz triangle)."""
    m = limit // 2
    T = [0] * (m + 1)
    if m >= 1:
        T[1] = 1
        for k in range(2, m + 1):
            T[k] = (k - 1) * T[k - 1]
        for n in range(2, m + 1):
            for k in range(n, m + 1):
                T[k] = (k - n) * T[k - 1] + (k - n + 2) * T[k]
    return T


def _fill_cache_by_recurrence(limit: int, cache: BernoulliCache) -> None:
    T = _tangent_batch(limit)
    cache.put(0, Fraction(1))
    for j in range(1, len(T)):
        n = 2 * j
        if cache.get(n) is None:
            num = n * T[j]
            den = 4**j * (4**j - 1)
            B = Fraction(-num if j % 2 == 0 else num, den)
            cache.put(n, B)


def bernoulli(n: int, cache: BernoulliCache | None = None, method: str = "auto") -> Fraction:
    """Exact B_n (B_1 = -1/2; zero for odd n > 1).

    method: "auto" picks the tangent recurrence batch for small n and the
    zeta rounding path for large n; "recurrence" / "zeta" force one.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    cache = cache or _default_cache
    got = cache.get(n)
    if got is not None:
        return got
    if method == "recurrence" or (method == "auto" and n <= RECURRENCE_LIMIT):
        _fill_cache_by_recurrence(max(n, _BATCH_MIN), cache)
        return cache.get(n)
    u = numerator_via_zeta(n)
    B = Fraction(-u if (n // 2) % 2 == 0 else u, vsc_denominator(n))
    cache.put(n, B)
    return B


def divided_bernoulli(n: int, cache: BernoulliCache | None = None) -> Fraction:
    """B_n / n for even n >= 2 (equals -zeta(1-n))."""
    if n < 2 or n % 2:
        raise ValueError("divided Bernoulli numbers take even n >= 2")
    return bernoulli(n, cache) / n


def vsc_denominator(n: int) -> int:
    """denominator of B_n for even n >= 2: the product of all primes p
    with p-1 | n (von Staudt-Clausen)."""
    if n < 2 or n % 2:
        raise ValueError("need even n >= 2")
    d = 1
    for div in _divisors(n):
        if is_prime(div + 1):
            d *= div + 1
    return d


def trivial_factor(n: int) -> int:
    """Product of p^ord_p(n) over primes p | n with p-1 not dividing n;
    always divides the numerator of B_n."""
    if n < 2 or n % 2:
        raise ValueError("need even n >= 2")
    out = 1
    for p, e in factorize(n):
        if n % (p - 1) != 0:
            out *= p**e
    return out


def _divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def power_sum(n: int, m: int) -> int:
    """S_n(m) = sum_{v=0}^{m-1} v^n, exact."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    return sum(pow(v, n) for v in range(1, m))


def power_sum_mod(n: int, m: int, modulus: int) -> int:
    """S_n(m) mod modulus without materializing the full powers."""
    return sum(pow(v, n, modulus) for v in range(1, m)) % modulus


def faulhaber_power_sum(n: int, m: int, cache: BernoulliCache | None = None) -> int:
    """S_n(m) through the Bernoulli expansion
    (n+1) S_n(m) = sum_j C(n+1, j) B_j m^(n+1-j); practical when m is huge
    but n is small."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    total = sum(
        math.comb(n + 1, j) * bernoulli(j, cache) * Fraction(m) ** (n + 1 - j)
        for j in range(0, n + 1)
    )
    total /= n + 1
    if total.denominator != 1:
        raise ArithmeticError("power sum did not come out integral")
    return total.numerator


def divided_bernoulli_mod(n: int, p: int, k: int, cache: BernoulliCache | None = None) -> int:
    """Canonical residue of B_n/n in [0, p^k).

    Requires odd prime p with p-1 not dividing n, which makes B_n/n a
    p-integer; computed exact-then-reduce (the cache amortizes repeats).
    """
    if p % 2 == 0:
        raise ValueError("p must be odd")
    if k < 1:
        raise ValueError("k must be >= 1")
    if n % (p - 1) == 0:
        raise ValueError(f"B_{n}/{n} is not {p}-integral (p-1 divides n)")
    b = divided_bernoulli(n, cache)
    pk = p**k
    if b.denominator % p == 0:
        raise ArithmeticError(f"unexpected p in denominator for n={n}, p={p}")
    return b.numerator * pow(b.denominator, -1, pk) % pk


def numerator_via_zeta(n: int, guard_digits: int = 10) -> int:
    """|numerator(B_n)| by rounding tau_n * zeta(n) with
    tau_n = 2 V_n n! / (2 pi)^n, all in certified integer intervals.

    Raises PrecisionError when the final interval holds no unique integer
    (retry with a larger guard).
    """
    if n < 2 or n % 2:
        raise ValueError("need even n >= 2")
    if guard_digits < 1:
        raise ValueError("guard_digits must be >= 1")
    V = vsc_denominator(n)
    lg_tau = (
        math.log10(2 * V) + math.lgamma(n + 1) / math.log(10) - n * math.log10(2 * math.pi)
    )
    w = max(1, math.ceil(lg_tau)) + guard_digits + len(str(n)) + 8
    S = 10**w
    pi_lo, pi_hi = pi_bounds(w)
    den_lo, den_hi = pow_bounds(2 * pi_lo, 2 * pi_hi, n, S)
    z_lo, z_hi, tail = zeta_bounds(n, w)
    F = 2 * V * math.factorial(n)
    # tau * (proven zeta tail) must stay under a quarter ulp of the integer
    tau_hi = Fraction(F * S, den_lo) / S
    if tail * tau_hi >= Fraction(1, 4):
        raise PrecisionError(f"zeta tail too large for n={n}; raise guard_digits")
    u_lo = F * z_lo * S // den_hi
    u_hi = ceil_div(F * z_hi * S, den_lo)
    lo_int = ceil_div(u_lo, S)
    hi_int = u_hi // S
    if lo_int != hi_int:
        raise PrecisionError(
            f"ambiguous rounding interval [{lo_int}, {hi_int}] for n={n}; raise guard_digits"
        )
    return lo_int


def tau_digit_agreement(n: int, cache: BernoulliCache | None = None) -> int:
    """Number of identical most-significant decimal digits of
    |numerator(B_n)| and floor(tau_n)."""
    if n < 2 or n % 2:
        raise ValueError("need even n >= 2")
    allow_big_int_str()
    u = abs(bernoulli(n, cache).numerator)
    if u <= 1:
        raise ValueError(f"U_{n} = {u}: no nontrivial numerator to compare")
    V = vsc_denominator(n)
    F = 2 * V * math.factorial(n)
    guard = 10
    while True:
        w = len(str(u)) + guard
        S = 10**w
        pi_lo, pi_hi = pi_bounds(w)
        den_lo, den_hi = pow_bounds(2 * pi_lo, 2 * pi_hi, n, S)
        t_lo = F * S // den_hi
        t_hi = ceil_div(F * S, den_lo)
        if t_lo // S == t_hi // S:
            tau_floor = t_lo // S
            break
        guard += 20
        if guard > 200:
            raise PrecisionError(f"cannot pin floor(tau_{n})")
    a, b = str(u), str(tau_floor)
    if len(a) != len(b):
        return 0
    count = 0
    for ca, cb in zip(a, b):
        if ca != cb:
            break
        count += 1
    return count
