"""Valuation structure of Bernoulli numerators and its consequences:
the extended divisibility theorem, power-sum congruences, generalized
Bernoulli checks, and finite verifications of the product formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import exact, pairs, zeta
from .padic import ord_p, teichmuller
from .primes import factor_with_budget, factorize, is_prime, odd_primes_upto

MAX_CHI_DEPTH = 16
GCD_INDEX_SET = frozenset({2, 4, 6, 8, 10, 14})  # numerator of |B_k/k| is 1


def _chi_agreement_depth(p: int, l: int, a: int, max_depth: int, oracle=None) -> int | None:
    """ord_p(a - chi_(p,l)) for integer a >= 0, or None when it exceeds
    max_depth (indeterminate)."""
    depth = 4
    while True:
        digits = pairs.digits_to_order(p, l, depth + 1, oracle).digit_list[1:]
        for i, d in enumerate(digits):
            if (a // p**i) % p != d:
                return i
        if depth >= max_depth:
            return None
        depth = min(depth + 4, max_depth)


@dataclass(frozen=True)
class AdamsValuation:
    """p^(r+delta) || B_n: r = ord_p(n) is the classical part, delta the
    irregular-pair excess."""

    n: int
    p: int
    r: int
    l: int
    case: str  # regular | irregular-nonpair | nonsingular | singular
    delta: int | None  # None = indeterminate at the configured chi depth

    @property
    def expected_ord(self) -> int | None:
        return None if self.delta is None else self.r + self.delta


def adams_delta(
    n: int,
    p: int,
    cache: exact.BernoulliCache | None = None,
    max_depth: int = MAX_CHI_DEPTH,
    verify: bool = False,
) -> AdamsValuation:
    """Classify the extra p-valuation of B_n for p | n, p-1 not dividing n.

    verify=True recomputes B_n exactly and checks p^(r+delta) || B_n.
    """
    if n < 2 or n % 2:
        raise ValueError("n must be even and >= 2")
    if not is_prime(p) or p < 3:
        raise ValueError(f"{p} is not an odd prime")
    r = int(ord_p(n, p))
    if r < 1:
        raise ValueError(f"{p} does not divide {n}")
    if n % (p - 1) == 0:
        raise ValueError(f"p-1 divides n: trivial-factor preconditions violated")
    l = n % (p - 1)
    out_l = l
    if pairs.scan_irregular(p, cache) == []:
        result = AdamsValuation(n, p, r, out_l, "regular", 0)
    elif l not in pairs.scan_irregular(p, cache):
        result = AdamsValuation(n, p, r, out_l, "irregular-nonpair", 0)
    else:
        d = pairs.delta(p, l, cache=cache)
        if d.singular:
            # no singular pair is known; the tree machinery would take over
            result = AdamsValuation(n, p, r, out_l, "singular", None)
        else:
            a = (n - l) // (p - 1)
            dep = _chi_agreement_depth(p, l, a, max_depth, pairs.exact_oracle(cache))
            delta_val = None if dep is None else 1 + dep
            result = AdamsValuation(n, p, r, out_l, "nonsingular", delta_val)
    if verify:
        if result.delta is None:
            raise ValueError("cannot verify an indeterminate classification")
        actual = int(ord_p(exact.bernoulli(n, cache), p))
        if actual != result.expected_ord:
            raise ArithmeticError(
                f"valuation mismatch at n={n}, p={p}: predicted {result.expected_ord}, got {actual}"
            )
    return result


def tau_structure(
    n: int,
    prime_bound: int,
    cache: exact.BernoulliCache | None = None,
    max_depth: int = MAX_CHI_DEPTH,
) -> dict[int, int]:
    """tau(p, n): how many orders nu the residues n mod phi(p^nu) stay on
    the unique chain over (p, n mod (p-1)); nonzero entries only.

    ord_p(numerator(B_n)) = tau(p, n) + ord_p(n) for p-1 not dividing n.
    """
    if n < 2 or n % 2:
        raise ValueError("n must be even and >= 2")
    out: dict[int, int] = {}
    oracle = pairs.exact_oracle(cache)
    for p in odd_primes_upto(prime_bound):
        if n % (p - 1) == 0:
            continue
        l = n % (p - 1)
        if l < 2 or l > p - 3:
            continue
        if exact.divided_bernoulli_mod(l, p, 1, cache) != 0:
            continue
        a = (n - l) // (p - 1)
        dep = _chi_agreement_depth(p, l, a, max_depth, oracle)
        if dep is None:
            raise ArithmeticError(f"chi depth exhausted at p={p}, n={n}")
        out[p] = 1 + dep
    return out


def delta_via_power_sums(p: int, l: int) -> int:
    """The pair difference mod p from power sums only:
    p^-2 (S_(l+p-1)(p)/(l-1) - S_l(p)/l) mod p."""
    if not 2 <= l <= p - 3 or l % 2:
        raise ValueError("need an even candidate index 2 <= l <= p-3")
    p3 = p**3
    s_hi = exact.power_sum_mod(l + p - 1, p, p3)
    s_lo = exact.power_sum_mod(l, p, p3)
    expr = (s_hi * pow(l - 1, -1, p3) - s_lo * pow(l, -1, p3)) % p3
    if expr % (p * p):
        raise ArithmeticError(f"power-sum expression not divisible by p^2 at ({p}, {l})")
    return expr // (p * p) % p


def divided_bernoulli_from_power_sum(n: int, p: int) -> int:
    """B_n/n mod p^2 through S_n(p)/(n p); needs p not dividing n and
    p-1 not dividing n."""
    if n % p == 0 or n % (p - 1) == 0:
        raise ValueError("need p and p-1 both coprime to n")
    p3 = p**3
    s = exact.power_sum_mod(n, p, p3)
    t = s * pow(n, -1, p3) % p3
    if t % p:
        raise ArithmeticError("S_n(p)/n not divisible by p")
    return t // p % (p * p)


def delta_s1_s2_check(p: int, cache: exact.BernoulliCache | None = None) -> dict[int, bool]:
    """Delta * s_1 * s_2 = -p^-2 S_l(p) mod p, per irregular l of p."""
    out = {}
    for l in pairs.scan_irregular(p, cache):
        d = pairs.delta(p, l, cache=cache).value
        s2 = pairs.digits_to_order(p, l, 2, pairs.exact_oracle(cache)).digit_list[1]
        lhs = d * l * s2 % p
        s_l = exact.power_sum_mod(l, p, p**3)
        if s_l % (p * p):
            raise ArithmeticError(f"S_l(p) valuation below 2 at ({p}, {l})")
        rhs = -(s_l // (p * p)) % p
        out[l] = lhs == rhs
    return out


@dataclass(frozen=True)
class GeneralizedBernoulliCheck:
    p: int
    l: int
    b1_omega_mod_p2: int
    b_index: int
    b_mod_p2: int
    equal: bool
    special_pair_with_l_minus_1: bool  # (p, l, l-1) of order two exists


def b1_omega_check(p: int, l: int, cache: exact.BernoulliCache | None = None) -> GeneralizedBernoulliCheck:
    """Compare the generalized Bernoulli number attached to the
    Teichmuller character power l-1 against B_(l+(p-1)(l-1)) mod p^2."""
    p3 = p**3
    total = 0
    for a in range(1, p):
        omega_a = teichmuller(a, p, 3).residue
        total = (total + a * pow(omega_a, l - 1, p3)) % p3
    if total % p:
        raise ArithmeticError(f"character sum not divisible by p at ({p}, {l})")
    b1 = total // p % (p * p)
    m = l + (p - 1) * (l - 1)
    bm = m * exact.divided_bernoulli_mod(m, p, 2, cache) % (p * p)
    s2 = pairs.digits_to_order(p, l, 2, pairs.exact_oracle(cache)).digit_list[1]
    return GeneralizedBernoulliCheck(
        p, l, b1, m, bm, b1 == bm, s2 == (l - 1) % p
    )


@dataclass(frozen=True)
class IwasawaReport:
    """Per-pair status of the verifiable class-number growth conditions.

    condition1 (the plus-part class number) is out of scope and reported
    as not evaluated.
    """

    p: int
    condition2_nonsingular: dict[int, bool]
    condition3_no_special_pair: dict[int, bool]
    remark_system: dict[int, tuple[bool, bool]]
    condition1: str = "not-evaluated"

    def all_hold(self) -> bool:
        return (
            all(self.condition2_nonsingular.values())
            and all(self.condition3_no_special_pair.values())
            and all(a and b for a, b in self.remark_system.values())
        )


def iwasawa_conditions(p: int, cache: exact.BernoulliCache | None = None) -> IwasawaReport:
    ls = pairs.scan_irregular(p, cache)
    if not ls:
        raise ValueError(f"{p} is regular")
    cond2 = {}
    cond3 = {}
    system = {}
    p3 = p**3
    for l in ls:
        cond2[l] = not pairs.delta(p, l, cache=cache).singular
        chk = b1_omega_check(p, l, cache)
        cond3[l] = not chk.special_pair_with_l_minus_1
        s_hi = exact.power_sum_mod(l + p - 1, p, p3)
        s_lo = exact.power_sum_mod(l, p, p3)
        system[l] = (
            (l * s_hi - (l - 1) * s_lo) % p3 != 0,
            (l * s_hi - (l - 2) * s_lo) % p3 != 0,
        )
    return IwasawaReport(p, cond2, cond3, system)


@dataclass(frozen=True)
class NumeratorDenominatorGcd:
    n: int
    k: int
    d: int
    prime_factors: tuple[int, ...]


def gcd_numer_denom(n: int, k: int, cache: exact.BernoulliCache | None = None) -> NumeratorDenominatorGcd:
    """D = gcd(numerator(B_n), denominator(B_(n-k))) for k in the index
    set with trivial divided-numerator; D divides n, is squarefree, and
    its primes divide neither denominator(B_k) nor numerator(B_n/n)."""
    if k not in GCD_INDEX_SET:
        raise ValueError(f"k must be one of {sorted(GCD_INDEX_SET)}")
    if n % 2 or n - k < 2:
        raise ValueError("need even n with n-k >= 2")
    lam = abs(exact.bernoulli(n, cache).numerator)
    d = math.gcd(lam, exact.vsc_denominator(n - k))
    fs = tuple(p for p, _ in factorize(d)) if d > 1 else ()
    if d > 1:
        if n % d:
            raise ArithmeticError(f"D = {d} does not divide n = {n}")
        if any(e > 1 for _, e in factorize(d)):
            raise ArithmeticError(f"D = {d} is not squarefree")
        vk = exact.vsc_denominator(k) if k >= 2 else 1
        bhat_num = abs(exact.divided_bernoulli(n, cache).numerator)
        for q in fs:
            if vk % q == 0:
                raise ArithmeticError(f"{q} divides denominator(B_{k})")
            if bhat_num % q == 0:
                raise ArithmeticError(f"{q} divides numerator(B_{n}/{n})")
    return NumeratorDenominatorGcd(n, k, d, fs)


def power_sum_divisibility_equiv(
    n: int, m: int, r: int, cache: exact.BernoulliCache | None = None
) -> tuple[bool, bool]:
    """(m^(r+1) | S_n(m), m^r | B_n) for r in {1, 2}; the two must agree.

    The sum side goes through the exact Bernoulli expansion when m is too
    large to sum directly.
    """
    if r not in (1, 2):
        raise ValueError("r must be 1 or 2")
    if n < 2 or n % 2 or m < 1:
        raise ValueError("need even n >= 2 and m >= 1")
    mr1 = m ** (r + 1)
    if m <= 100_000:
        s_side = exact.power_sum_mod(n, m, mr1) == 0
    else:
        s_side = exact.faulhaber_power_sum(n, m, cache) % mr1 == 0
    b_side = exact.bernoulli(n, cache).numerator % m**r == 0
    if s_side != b_side:
        raise ArithmeticError(
            f"divisibility equivalence violated at n={n}, m={m}, r={r}"
        )
    return s_side, b_side


@dataclass(frozen=True)
class LocalFactorRow:
    p: int
    l: int  # 0 on the pole branch (p-1 | n)
    rho: int  # 1 - 2*sign(l)
    predicted_ord: int  # of B_n/n at p
    actual_ord: int


@dataclass(frozen=True)
class ZetaProductReport:
    n: int
    prime_bound: int
    rows: tuple[LocalFactorRow, ...]
    numerator_fully_factored: bool
    numerator_complete_under_bound: bool

    def all_match(self) -> bool:
        return all(r.predicted_ord == r.actual_ord for r in self.rows)


def verify_zeta_product(
    n: int,
    prime_bound: int,
    cache: exact.BernoulliCache | None = None,
    max_depth: int = MAX_CHI_DEPTH,
) -> ZetaProductReport:
    """Per-prime valuation comparison of B_n/n against the local factors
    the product formula predicts: |p(s - chi)|_p on the zero side and the
    pole factor when p-1 | n."""
    if n < 2 or n % 2:
        raise ValueError("n must be even and >= 2")
    bhat = exact.divided_bernoulli(n, cache)
    rows = []
    oracle = pairs.exact_oracle(cache)
    for p in [2] + odd_primes_upto(prime_bound):
        if n % (p - 1) == 0:
            predicted = -(1 + int(ord_p(n, p)))
            rows.append(
                LocalFactorRow(p, 0, 1, predicted, int(ord_p(bhat, p)))
            )
            continue
        l = n % (p - 1)
        if l % 2 or exact.divided_bernoulli_mod(l, p, 1, cache) != 0:
            predicted = 0
        else:
            a = (n - l) // (p - 1)
            dep = _chi_agreement_depth(p, l, a, max_depth, oracle)
            if dep is None:
                raise ArithmeticError(f"chi depth exhausted at p={p}, n={n}")
            predicted = 1 + dep
        if predicted or int(ord_p(bhat, p)) != 0:
            rows.append(LocalFactorRow(p, l, -1, predicted, int(ord_p(bhat, p))))
    u = abs(bhat.numerator)
    factors, cofactor = factor_with_budget(u) if u > 1 else ({}, 1)
    fully = cofactor == 1
    complete = fully and all(q <= prime_bound for q in factors)
    if complete:
        rebuilt = 1
        for row in rows:
            if row.rho == -1:
                rebuilt *= row.p**row.predicted_ord
        if rebuilt != u:
            raise ArithmeticError(
                f"predicted local factors rebuild {rebuilt}, numerator is {u}"
            )
    return ZetaProductReport(n, prime_bound, tuple(rows), fully, complete)


def pll_check(p: int, cache: exact.BernoulliCache | None = None) -> dict[int, bool]:
    """Whether s_2 = s_1 in the order-two pair over each irregular l of p
    (equivalently p^3 | B_(lp)); expected False everywhere."""
    out = {}
    for l in pairs.scan_irregular(p, cache):
        s2 = pairs.digits_to_order(p, l, 2, pairs.exact_oracle(cache)).digit_list[1]
        out[l] = s2 == l % p
    return out
