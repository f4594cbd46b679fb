"""Scaled-integer interval arithmetic for the zeta-rounding numerator method.

All quantities are carried as integer pairs (lo, hi) at a decimal scale
10^w, with lo <= true*10^w <= hi maintained through every operation, so the
final rounding step can certify that exactly one integer lies in the
interval.
"""

from __future__ import annotations

import math
import sys
import threading
from fractions import Fraction

# B_2, B_4, ..., B_30 as (numerator, denominator); coefficients of the
# Euler-Maclaurin tail corrections used for zeta(n) at small n.
_EM_BERNOULLI = (
    (1, 6), (-1, 30), (1, 42), (-1, 30), (5, 66), (-691, 2730), (7, 6),
    (-3617, 510), (43867, 798), (-174611, 330), (854513, 138),
    (-236364091, 2730), (8553103, 6), (-23749461029, 870),
    (8615841276005, 14322),
)

_EM_CUTOFF = 64  # below this index the plain series needs too many terms


def allow_big_int_str(digits: int = 2_000_000_000) -> None:
    """Raise CPython's int<->str conversion limit (Bernoulli numerators
    routinely exceed the 4300-digit default)."""
    if hasattr(sys, "get_int_max_str_digits") and sys.get_int_max_str_digits() < digits:
        sys.set_int_max_str_digits(digits)


def ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


_pi_lock = threading.Lock()
_pi_state = {"w": 0, "lo": 0, "hi": 0}


def _machin_pi(w: int) -> tuple[int, int]:
    """lo <= pi * 10^w <= hi via Machin's formula with floor-division
    chains; every floor loses < 1 ulp and the running deficits are
    counted into an explicit slack."""
    extra = 12
    S = 10 ** (w + extra)

    def atan_inv(x: int) -> tuple[int, int]:
        # atan(1/x) = sum (-1)^k / ((2k+1) x^(2k+1)); u_k tracks
        # S/x^(2k+1) with a bounded floor deficit (< x^2/(x^2-1) + 1).
        u = S // x
        x2 = x * x
        total = 0
        k = 0
        terms = 0
        while u:
            t = u // (2 * k + 1)
            total += -t if k & 1 else t
            u //= x2
            k += 1
            terms += 1
        return total, terms

    a, na = atan_inv(5)
    b, nb = atan_inv(239)
    v = 16 * a - 4 * b
    slack = 16 * (3 * na + 5) + 4 * (3 * nb + 5)
    q = 10**extra
    return (v - slack) // q, ceil_div(v + slack, q)


def pi_bounds(w: int) -> tuple[int, int]:
    """Cached lo <= pi * 10^w <= hi."""
    with _pi_lock:
        if _pi_state["w"] < w:
            target = w + w // 4 + 16  # overshoot so nearby requests reuse it
            lo, hi = _machin_pi(target)
            _pi_state.update(w=target, lo=lo, hi=hi)
        shift = 10 ** (_pi_state["w"] - w)
        return _pi_state["lo"] // shift, ceil_div(_pi_state["hi"], shift)


def pow_bounds(lo: int, hi: int, n: int, S: int) -> tuple[int, int]:
    """Interval power [lo,hi]^n at scale S, for 0 <= lo <= hi."""
    rlo, rhi = S, S
    blo, bhi = lo, hi
    e = n
    while e:
        if e & 1:
            rlo = rlo * blo // S
            rhi = ceil_div(rhi * bhi, S)
        e >>= 1
        if e:
            blo, bhi = blo * blo // S, ceil_div(bhi * bhi, S)
    return rlo, rhi


def _rising(n: int, m: int) -> int:
    r = 1
    for i in range(m):
        r *= n + i
    return r


def _em_tail(n: int, a: int, j_terms: int) -> tuple[Fraction, Fraction]:
    """(tail, error bound) for sum_{q >= a} q^-n by Euler-Maclaurin with
    j_terms correction terms.

    x^-n is completely monotone, so the remainder is bounded by the first
    omitted correction term.
    """
    an = Fraction(a) ** n
    tail = Fraction(a, (n - 1)) / an + Fraction(1, 2) / an
    for j in range(1, j_terms + 1):
        bnum, bden = _EM_BERNOULLI[j - 1]
        tail += (
            Fraction(bnum, bden)
            * _rising(n, 2 * j - 1)
            / math.factorial(2 * j)
            / (an * a ** (2 * j - 1))
        )
    bnum, bden = _EM_BERNOULLI[j_terms]
    err = (
        Fraction(abs(bnum), bden)
        * _rising(n, 2 * j_terms + 1)
        / math.factorial(2 * j_terms + 2)
        / (an * a ** (2 * j_terms + 1))
    )
    return tail, err


def zeta_bounds(n: int, w: int) -> tuple[int, int, Fraction]:
    """lo <= zeta(n) * 10^w <= hi for even n >= 2, plus the proven tail
    bound (as a Fraction) so callers can assert it against their ulp
    budget."""
    if n < 2:
        raise ValueError("need n >= 2")
    S = 10**w
    quarter_ulp = Fraction(1, 4 * S)
    if n >= _EM_CUTOFF:
        a = int(10 ** ((w + 6) / (n - 1))) + 2
        j_terms = 0
    else:
        a, j_terms = 1024, 4
        while True:
            _, err = _em_tail(n, a, j_terms)
            if err < quarter_ulp:
                break
            if j_terms + 2 < len(_EM_BERNOULLI):
                j_terms += 2
            else:
                a *= 4
    tail, err = _em_tail(n, a, j_terms)
    if err >= quarter_ulp:
        raise ValueError(f"zeta tail bound not below a quarter ulp at n={n}, w={w}")
    lo = S  # q = 1
    hi = S
    for q in range(2, a):
        t = S // q**n
        lo += t
        hi += t + 1
    lo += math.floor((tail - err) * S)
    hi += math.ceil((tail + err) * S)
    return lo, hi, err
