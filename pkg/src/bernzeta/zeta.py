"""p-adic zeta values, interpolation, and the zero attached to an
irregular pair.

For a fixed residue class s1 mod p-1 the function interpolates
-(1-p^(n-1)) B_n/n over n = s1 + (p-1)s; its first r values determine it
modulo p^r through the triangular polynomials T. For an irregular pair
(p, l) with nonsingular difference the function on the class of l has a
unique simple zero whose digits are exactly the higher-order pair
offsets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import exact, pairs
from .errors import PrecisionError, SingularDeltaError
from .padic import PadicApprox, from_rational, ord_p, padic_binomial, psi_project

CHI_DIRECT_MAX_ORDER = 30  # beyond this, use the digit lift instead


def euler_factor(n: int, p: int, k: int) -> int:
    """(1 - p^(n-1)) mod p^k; collapses to 1 once n-1 >= k."""
    if n - 1 >= k:
        return 1
    return (1 - p ** (n - 1)) % p**k


def zeta_p_value(n: int, p: int, k: int, cache: exact.BernoulliCache | None = None) -> PadicApprox:
    """zeta_p(1-n) = -(1 - p^(n-1)) B_n/n mod p^k, for p-1 not dividing n."""
    b = exact.divided_bernoulli_mod(n, p, k, cache)
    pk = p**k
    return PadicApprox(p, k, -euler_factor(n, p, k) * b % pk)


def T_polynomial(r: int, k: int, s, m: int | None = None):
    """T_{r,k}(s) = sum_{j=k}^r (-1)^(j+k) C(j,k) C(s,j).

    Exact integer for integer s >= 0; for a PadicApprox argument the
    binomials are formed at target precision m (mandatory).
    """
    if not 0 <= k <= r:
        raise ValueError("need 0 <= k <= r")
    if isinstance(s, PadicApprox):
        if m is None:
            raise ValueError("target precision m is required for p-adic arguments")
        acc = PadicApprox(s.p, m, 0)
        for j in range(k, r + 1):
            term = math.comb(j, k) * padic_binomial(s, j, m)
            acc = acc - term if (j + k) % 2 else acc + term
        return acc
    if s < 0:
        raise ValueError("integer arguments must be >= 0")
    acc = 0
    for j in range(k, r + 1):
        t = math.comb(j, k) * math.comb(s, j)
        acc = acc - t if (j + k) % 2 else acc + t
    return acc


@dataclass(frozen=True)
class ZetaContext:
    """A p-adic zeta function fixed to the residue class s1 (s1 = 0 is the
    pole branch and only supports the exact-rational checks)."""

    p: int
    s1: int

    def __post_init__(self):
        if self.p < 2:
            raise ValueError("p must be prime")
        if self.s1 and (self.s1 % 2 or not 2 <= self.s1 <= self.p - 3):
            raise ValueError(f"s1 = {self.s1} invalid for p = {self.p}")

    def index(self, k: int) -> int:
        return self.s1 + k * (self.p - 1)

    def value(self, k: int, prec: int, cache=None) -> PadicApprox:
        """zeta_{p,s1}(k) for integer k >= 0, mod p^prec."""
        return zeta_p_value(self.index(k), self.p, prec, cache)

    def window(self, r: int, count: int | None = None, cache=None) -> list[PadicApprox]:
        """The leading values zeta(0..count-1) mod p^r (count defaults to r)."""
        count = r if count is None else count
        return [self.value(k, r, cache) for k in range(count)]


def zeta_pl_eval(
    p: int,
    s1: int,
    s,
    r: int,
    window: list[PadicApprox] | None = None,
    cache: exact.BernoulliCache | None = None,
) -> PadicApprox:
    """zeta_{p,s1}(s) mod p^r from the window of its first r values."""
    ctx = ZetaContext(p, s1)
    if window is None:
        window = ctx.window(r, cache=cache)
    if len(window) < r:
        raise PrecisionError(f"window of length {len(window)} too short for mod p^{r}")
    if any(w.k < r for w in window):
        raise PrecisionError("window values carry less precision than requested")
    if isinstance(s, PadicApprox):
        acc = PadicApprox(p, r, 0)
        for k in range(r):
            acc = acc + window[k].with_precision(r) * T_polynomial(r - 1, k, s, r)
        return acc
    acc = 0
    pr = p**r
    for k in range(r):
        acc = (acc + window[k].residue * T_polynomial(r - 1, k, s)) % pr
    return PadicApprox(p, r, acc)


def interpolated_divided_bernoulli_mod(
    n: int, p: int, k: int, cache: exact.BernoulliCache | None = None
) -> int:
    """B_n/n mod p^k for even n with p-1 not dividing n, computed from
    divided Bernoulli numbers at the k smallest indices of the residue
    class of n -- no large-index Bernoulli number is touched."""
    if n % 2 or n < 2:
        raise ValueError("need even n >= 2")
    s1 = n % (p - 1)
    if s1 == 0:
        raise ValueError("p-1 divides n")
    s = (n - s1) // (p - 1)
    val = zeta_pl_eval(p, s1, s, k, cache=cache)
    pk = p**k
    e = euler_factor(n, p, k)
    return -val.residue * pow(e, -1, pk) % pk


def interpolating_oracle(
    cache: exact.BernoulliCache | None = None, direct_limit: int = 20000
) -> pairs.BernoulliModOracle:
    """Oracle that reduces exactly below direct_limit and interpolates
    along the residue class above it."""

    def oracle(n: int, p: int, k: int) -> int:
        if n <= direct_limit:
            return exact.divided_bernoulli_mod(n, p, k, cache)
        return interpolated_divided_bernoulli_mod(n, p, k, cache)

    return oracle


@dataclass(frozen=True)
class ChiZero:
    """Truncated expansion of the zero of zeta_{p,l}: digits are
    s_2, ..., s_(n+1), so the value is known mod p^n."""

    p: int
    l: int
    digit_list: tuple[int, ...]

    @property
    def precision(self) -> int:
        return len(self.digit_list)

    def psi(self, r: int) -> int:
        """The zero mod p^r as a least nonnegative residue."""
        if r > self.precision:
            raise PrecisionError(f"only {self.precision} digits known, need {r}")
        return sum(d * self.p**i for i, d in enumerate(self.digit_list[:r]))

    def as_padic(self) -> PadicApprox:
        return PadicApprox(self.p, self.precision, self.psi(self.precision))


def chi_zero(p: int, l: int, n: int, cache: exact.BernoulliCache | None = None) -> ChiZero:
    """First n digits of the zero of zeta_{p,l} by the stepwise
    interpolation algorithm (values at arguments 0..n only).

    Limited to n <= min(p-2, 30); deeper digits come from the pair lift,
    which this routine cross-checks at moderate depth.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > min(p - 2, CHI_DIRECT_MAX_ORDER):
        raise ValueError(
            f"direct zero extraction capped at order {min(p - 2, CHI_DIRECT_MAX_ORDER)}"
        )
    ctx = ZetaContext(p, l)
    pn = p**n
    vals = []  # zeta_{p,l,1}(k) = zeta_{p,l}(k)/p mod p^n
    for k in range(n + 1):
        v = ctx.value(k, n + 1, cache)
        if v.residue % p:
            raise ValueError(f"({p}, {l}) is not an irregular pair")
        vals.append(v.residue // p % pn)
    d = (vals[0] - vals[1]) % p
    if d == 0:
        raise SingularDeltaError(f"({p}, {l}) has singular difference")
    dinv = pow(d, -1, p)
    t = 0
    digits = []
    for r in range(1, n + 1):
        pr = p**r
        xi = 0
        for k in range(r + 1):
            xi = (xi + vals[k] * T_polynomial(r, k, t)) % pr
        if xi % p ** (r - 1):
            raise ArithmeticError(f"xi_{r} lost expected valuation at ({p}, {l})")
        s_next = xi // p ** (r - 1) * dinv % p
        digits.append(s_next)
        t += s_next * p ** (r - 1)
    return ChiZero(p, l, tuple(digits))


def chi_from_lift(p: int, l: int, n: int, oracle=None) -> ChiZero:
    """The same digits through the order-lift algorithm (integer-only)."""
    dp = pairs.digits_to_order(p, l, n + 1, oracle)
    return ChiZero(p, l, dp.digit_list[1:])


@dataclass(frozen=True)
class MahlerCoeffs:
    """Leading Mahler coefficients z_1..z_m of the order-n function on the
    class of (p, l): f(s) = f(0) + sum p^(n(v-1)) z_v C(s, v)."""

    p: int
    l: int
    order: int
    z: tuple[PadicApprox, ...]


def order_n_zeta_values(
    p: int,
    l: int,
    n: int,
    count: int,
    prec: int,
    chi: ChiZero | None = None,
    cache: exact.BernoulliCache | None = None,
) -> list[PadicApprox]:
    """Values of the order-n function p^-n zeta_{p,l}(psi_(n-1)(chi) + p^(n-1) s)
    at s = 0..count-1, each mod p^prec, via window interpolation."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if chi is None and n > 1:
        chi = chi_zero(p, l, n - 1, cache)
    base = chi.psi(n - 1) if n > 1 else 0
    out = []
    for s in range(count):
        arg = base + p ** (n - 1) * s
        v = zeta_pl_eval(p, l, arg, prec + n, cache=cache)
        out.append(v.div_p(n))
    return out


def mahler_coeffs(
    p: int,
    l: int,
    n: int,
    m: int,
    cache: exact.BernoulliCache | None = None,
) -> MahlerCoeffs:
    """z_v = (-1)^v p^(-n(v-1)) D^v f(0) for v = 1..m, where f is the
    order-n function; asserts z_1 = -Delta mod p."""
    prec = n * m + 2
    vals = order_n_zeta_values(p, l, n, m + 1, prec, cache=cache)
    zs = []
    for v in range(1, m + 1):
        acc = 0
        mod = p**prec
        for i in range(v + 1):
            t = math.comb(v, i) * vals[i].residue
            acc = acc - t if i % 2 else acc + t
        acc %= mod
        if v % 2:
            acc = -acc % mod
        peel = n * (v - 1)
        if acc % p**peel:
            raise ArithmeticError(
                f"D^{v} f(0) has valuation below {peel} at ({p}, {l}): computation bug"
            )
        zs.append(PadicApprox(p, prec - peel, acc // p**peel))
    d = pairs.delta(p, l, cache=cache)
    if (zs[0].residue + d.value) % p:
        raise ArithmeticError(f"z_1 != -Delta mod {p} at ({p}, {l})")
    return MahlerCoeffs(p, l, n, tuple(zs))


def strong_kummer_check(
    p: int, l: int, s: int, t: int, cache: exact.BernoulliCache | None = None
) -> tuple[int, int]:
    """ord_p(zeta_{p,l}(s) - zeta_{p,l}(t)) together with the quotient
    (zeta(s)-zeta(t)) / (p (s-t)) mod p; the strong Kummer congruence says
    the valuation is 1 + ord_p(s-t) and the quotient is -Delta."""
    if s == t:
        raise ValueError("need s != t")
    if s < 0 or t < 0:
        raise ValueError("arguments must be nonnegative integers")
    v_st = int(ord_p(s - t, p))
    k = v_st + 3
    ctx = ZetaContext(p, l)
    diff = ctx.value(s, k, cache) - ctx.value(t, k, cache)
    expected = 1 + v_st
    if diff.valuation() != expected:
        raise ArithmeticError(
            f"strong Kummer valuation failed at ({p},{l}), s={s}, t={t}: "
            f"{diff.valuation()} != {expected}"
        )
    unit = diff.residue // p**expected
    st_unit = (s - t) // p**v_st
    quotient = unit * pow(st_unit, -1, p) % p
    return expected, quotient


def zeta_star_p0(p: int, s: int, cache: exact.BernoulliCache | None = None) -> Fraction:
    """The pole-free companion on the class s1 = 0:
    -(1 - p^(s(p-1)-1)) p B_(s(p-1)) / (p-1) at integer arguments
    (value -1 at s = 0)."""
    if s < 0:
        raise ValueError("only nonnegative integer arguments are evaluated exactly")
    if s == 0:
        return Fraction(-1)
    n = s * (p - 1)
    return -(1 - Fraction(p) ** (n - 1)) * p * exact.bernoulli(n, cache) / (p - 1)


def zeta_p0_pole_check(
    p: int, s: int, k: int, cache: exact.BernoulliCache | None = None
) -> tuple[int, int]:
    """Confirm |zeta_{p,0}(s)|_p = |ps|_p^(-1) and return
    (that exponent, residue of zeta*_{p,0}(s) mod p^k).

    For p = 2 the argument must be even (the pole law needs s in 2 Z_2).
    """
    if s == 0:
        raise ValueError("s = 0 is the pole")
    if p == 2 and s % 2:
        raise ValueError("p = 2 requires even s")
    n = s * (p - 1)
    zeta_val = -(1 - Fraction(p) ** (n - 1)) * exact.divided_bernoulli(n, cache)
    v = ord_p(zeta_val, p)
    expected = -(1 + ord_p(s, p))
    if v != expected:
        raise ArithmeticError(f"pole law failed at p={p}, s={s}: ord {v} != {expected}")
    star = p * s * zeta_val
    if ord_p(star, p) < 0:
        raise ArithmeticError("companion value not p-integral")
    pk = p**k
    res = star.numerator * pow(star.denominator, -1, pk) % pk
    if (res + 1) % p:
        raise ArithmeticError(f"zeta*_(p,0)({s}) != -1 mod {p}")
    return -int(v), res


@dataclass(frozen=True)
class CarlitzResult:
    ok: bool
    theorem_ok: bool
    corollary_ok: bool | None
    detail: str = ""


def carlitz_congruence_check(
    p: int,
    m: int,
    n: int = 1,
    r: int = 2,
    k_mult: int = 1,
    cache: exact.BernoulliCache | None = None,
) -> CarlitzResult:
    """The generalized Kummer congruence
    sum_v C(r,v) (-1)^v (1-p^(m+vw-1)) B(m+vw)/(m+vw) = 0 mod p^(nr) with
    w = k phi(p^n); when (p, m mod phi(p^n)) is irregular of order n, the
    Euler-factor-free variant mod p^min(m-1, n(r-1)) is checked as well.
    """
    if m % 2 or m < 2:
        raise ValueError("m must be even and >= 2")
    if m % (p - 1) == 0:
        raise ValueError("p-1 must not divide m")
    w = k_mult * pairs.phi_pp(p, n)
    acc = Fraction(0)
    for v in range(r + 1):
        idx = m + v * w
        term = (1 - Fraction(p) ** (idx - 1)) * exact.divided_bernoulli(idx, cache)
        acc += term if v % 2 == 0 else -term
    thm_ok = ord_p(acc, p) >= n * r
    cor_ok = None
    if exact.divided_bernoulli_mod(m, p, n, cache) == 0:
        acc2 = Fraction(0)
        for v in range(r + 1):
            idx = m + v * w
            term = exact.divided_bernoulli(idx, cache) / p**n
            acc2 += term if v % 2 == 0 else -term
        cor_ok = ord_p(acc2, p) >= min(m - 1, n * (r - 1))
    ok = thm_ok and cor_ok is not False
    detail = "" if ok else f"p={p}, m={m}, n={n}, r={r}, k={k_mult}"
    return CarlitzResult(ok, thm_ok, cor_ok, detail)
