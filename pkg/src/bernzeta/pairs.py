"""Irregular pairs, their higher-order structure, and the digit lifts.

An irregular pair (p, l) of order n has p^n dividing B_l/l with
2 <= l < (p-1)p^(n-1). When the first-order difference invariant is
nonzero there is exactly one related pair of each higher order; the
stepwise lift recovers its p-adic digits from divided Bernoulli numbers
with small indices only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

from . import exact
from .errors import SingularDeltaError
from .primes import is_prime, odd_primes_upto

# (n, p, k) -> canonical residue of B_n/n mod p^k
BernoulliModOracle = Callable[[int, int, int], int]


def exact_oracle(cache: exact.BernoulliCache | None = None) -> BernoulliModOracle:
    """The production oracle: exact Bernoulli number, then reduce."""

    def oracle(n: int, p: int, k: int) -> int:
        return exact.divided_bernoulli_mod(n, p, k, cache)

    return oracle


def phi_pp(p: int, n: int) -> int:
    """Euler phi of p^n."""
    return (p - 1) * p ** (n - 1)


@dataclass(frozen=True)
class IrregularPair:
    """(p, l) with p^n | B_l/l, in index form."""

    p: int
    l: int
    n: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("order must be >= 1")
        if self.l % 2 or not 2 <= self.l < phi_pp(self.p, self.n):
            raise ValueError(
                f"index {self.l} invalid for order {self.n} at p={self.p}"
            )

    def digits(self) -> "DigitPair":
        return DigitPair.from_index(self.p, self.l, self.n)


@dataclass(frozen=True)
class DigitPair:
    """(p, s_1, ..., s_n): the p-adic digit notation of an irregular pair,
    where l = sum s_v * phi(p^(v-1))."""

    p: int
    digit_list: tuple[int, ...]

    def __post_init__(self):
        s = self.digit_list
        if not s:
            raise ValueError("need at least one digit")
        if s[0] % 2 or not 2 <= s[0] <= self.p - 3:
            raise ValueError(f"s_1 = {s[0]} out of range for p = {self.p}")
        if any(not 0 <= d < self.p for d in s[1:]):
            raise ValueError("digits must lie in [0, p)")

    @property
    def order(self) -> int:
        return len(self.digit_list)

    def to_index(self) -> int:
        l = self.digit_list[0]
        for v, d in enumerate(self.digit_list[1:], start=1):
            l += d * phi_pp(self.p, v)
        return l

    def to_pair(self) -> IrregularPair:
        return IrregularPair(self.p, self.to_index(), self.order)

    @classmethod
    def from_index(cls, p: int, l: int, n: int) -> "DigitPair":
        s1 = l % (p - 1)
        if s1 % 2:
            raise ValueError(f"index {l} is odd mod p-1")
        rest = (l - s1) // (p - 1)
        digits = [s1]
        for _ in range(n - 1):
            rest, d = divmod(rest, p)
            digits.append(d)
        if rest:
            raise ValueError(f"index {l} exceeds phi(p^{n})")
        return cls(p, tuple(digits))

    def drop_last(self) -> "DigitPair":
        if self.order < 2:
            raise ValueError("already order 1")
        return DigitPair(self.p, self.digit_list[:-1])


@dataclass(frozen=True)
class DeltaValue:
    """The mod-p difference quotient attached to a pair of order n:
    (B(l+phi(p^n))/(l+phi) - B(l)/l) / p^n mod p; zero means singular."""

    p: int
    l: int
    n: int
    value: int

    @property
    def singular(self) -> bool:
        return self.value == 0


class NextOrder(NamedTuple):
    """Outcome of the order n -> n+1 step: 'none', 'all', or 'unique'."""

    case: str
    s: int | None
    children: tuple[IrregularPair, ...]


@dataclass(frozen=True)
class SingularTree:
    """Rooted p-ary tree of related pairs in the singular case."""

    pair: IrregularPair
    children: tuple["SingularTree", ...]

    def height(self) -> int:
        if not self.children:
            return 0
        return 1 + max(c.height() for c in self.children)

    def height_of(self, n: int) -> int:
        """Largest height of a node (p, n mod phi(p^nu)) in this tree;
        the extra-valuation exponent of the singular branch."""
        best = -1
        stack = [(self, 0)]
        while stack:
            node, h = stack.pop()
            q = node.pair
            if n % phi_pp(q.p, q.n) == q.l:
                best = max(best, h)
            stack.extend((c, h + 1) for c in node.children)
        if best < 0:
            raise ValueError(f"index {n} meets no node of the tree")
        return best

    def all_pairs(self) -> list[IrregularPair]:
        out = [self.pair]
        for c in self.children:
            out.extend(c.all_pairs())
        return out


def scan_irregular(p: int, cache: exact.BernoulliCache | None = None) -> list[int]:
    """All even l in [2, p-3] with p | numerator(B_l), sorted."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    out = []
    for l in range(2, p - 2, 2):
        if exact.divided_bernoulli_mod(l, p, 1, cache) == 0:
            out.append(l)
    return out


def irregular_pairs_upto(bound: int, cache: exact.BernoulliCache | None = None) -> list[IrregularPair]:
    """All first-order irregular pairs with p < bound, sorted by (p, l)."""
    pairs = []
    for p in odd_primes_upto(bound - 1):
        pairs.extend(IrregularPair(p, l) for l in scan_irregular(p, cache))
    return pairs


def certify_pair(pair: IrregularPair, oracle: BernoulliModOracle) -> None:
    """Check p^n | B_l/l; raises on failure."""
    if oracle(pair.l, pair.p, pair.n) != 0:
        raise ValueError(f"({pair.p}, {pair.l}) is not irregular of order {pair.n}")


def delta(
    p: int,
    l: int,
    n: int = 1,
    oracle: BernoulliModOracle | None = None,
    cache: exact.BernoulliCache | None = None,
) -> DeltaValue:
    oracle = oracle or exact_oracle(cache)
    pair = IrregularPair(p, l, n)
    certify_pair(pair, oracle)
    pn1 = p ** (n + 1)
    a = oracle(l, p, n + 1)
    b = oracle(l + phi_pp(p, n), p, n + 1)
    d = (b - a) % pn1
    if d % p**n:
        raise ArithmeticError("difference lost expected divisibility")
    return DeltaValue(p, l, n, (d // p**n) % p)


def lambda_map(pair: IrregularPair) -> IrregularPair:
    """Drop to order n-1: (p, l mod phi(p^(n-1)), n-1)."""
    if pair.n < 2:
        raise ValueError("order must be >= 2")
    return IrregularPair(pair.p, pair.l % phi_pp(pair.p, pair.n - 1), pair.n - 1)


def chain_of_pair(pair: IrregularPair) -> list[IrregularPair]:
    """Related pairs of descending order n, n-1, ..., 1."""
    out = [pair]
    while out[-1].n > 1:
        out.append(lambda_map(out[-1]))
    return out


def next_order(pair: IrregularPair, oracle: BernoulliModOracle | None = None) -> NextOrder:
    """The three-way step from order n to n+1.

    alpha_j = p^-n B(l + j phi(p^n))/(...) mod p decides: no descendant,
    all p children, or the unique child at offset s = -alpha_0 / Delta.
    """
    oracle = oracle or exact_oracle()
    p, l, n = pair.p, pair.l, pair.n
    phi = phi_pp(p, n)

    def alpha(j: int) -> int:
        r = oracle(l + j * phi, p, n + 1)
        if r % p**n:
            raise ValueError(f"({p}, {l}) is not irregular of order {n}")
        return (r // p**n) % p

    a0, a1 = alpha(0), alpha(1)
    d = (a1 - a0) % p
    if d == 0 and a0 != 0:
        return NextOrder("none", None, ())
    if d == 0:
        kids = tuple(IrregularPair(p, l + v * phi, n + 1) for v in range(p))
        return NextOrder("all", None, kids)
    s = -a0 * pow(d, -1, p) % p
    return NextOrder("unique", s, (IrregularPair(p, l + s * phi, n + 1),))


def _forward_diffs(seeds: list[int], mod: int) -> list[int]:
    d = [s % mod for s in seeds]
    out = [d[0]]
    for _ in range(len(seeds) - 1):
        d = [(d[i + 1] - d[i]) % mod for i in range(len(d) - 1)]
        out.append(d[0])
    return out


def _newton_eval(diffs: list[int], j: int, mod: int) -> int:
    """Value at index j of the sequence with the given forward differences
    (exact modulo mod because the r-th difference vanishes there)."""
    acc = 0
    c = 1  # C(j, i), exact integer
    for i, d in enumerate(diffs):
        if i:
            c = c * (j - i + 1) // i
        acc += c % mod * d
    return acc % mod


def _lift_digits(
    p: int,
    l: int,
    n: int,
    r: int,
    shift: int,
    delta_value: int,
    oracle: BernoulliModOracle,
) -> list[int]:
    """Digits s_(n+1) .. s_(rn) of the unique related pair of order rn.

    Seeds are alpha_j = p^-n B(l_eff + j phi(p^n))/idx mod p^u for
    j = 0..r-1 with l_eff = l + shift*phi(p^n) and u = (r-1)n. Each step
    finds the zero column mod p, records the digit (correcting for the
    running shift), divides out p, and recurses on the stride-p
    subsequence, evaluated through Newton forward differences (the order-r
    difference of the sequence vanishes at the working modulus).
    """
    u = (r - 1) * n
    phi = phi_pp(p, n)
    if l + shift * phi <= u:
        raise ValueError(f"need l + shift*phi > (r-1)n; got {l + shift * phi} <= {u}")
    if delta_value % p == 0:
        raise SingularDeltaError(f"pair ({p}, {l}) has singular difference")
    dinv = pow(delta_value, -1, p)
    pn = p**n
    seeds = []
    for j in range(r):
        res = oracle(l + (shift + j) * phi, p, u + n)
        if res % pn:
            raise ValueError(f"oracle disagrees: ({p}, {l}) not of order {n}")
        seeds.append((res // pn) % p**u)
    digits: list[int] = []
    t = shift
    for k in range(u):
        mod = p ** (u - k)
        diffs = _forward_diffs(seeds, mod)
        j0 = -seeds[0] * dinv % p
        vals = [_newton_eval(diffs, j0 + j * p, mod) for j in range(r)]
        if any(v % p for v in vals):
            raise ArithmeticError(
                f"zero column prediction failed at step {k} for ({p}, {l})"
            )
        digits.append((t + j0) % p)
        t = (t + j0) // p
        if k < u - 1:
            seeds = [v // p for v in vals]
    return digits


def lift_order(pair: IrregularPair, r: int, oracle: BernoulliModOracle | None = None) -> DigitPair:
    """The unique related pair of order r*n as digits, requiring
    l > (r-1)n (no index shift)."""
    if r < 2:
        raise ValueError("r must be >= 2")
    oracle = oracle or exact_oracle()
    d = delta(pair.p, pair.l, pair.n, oracle)
    if d.singular:
        raise SingularDeltaError(f"({pair.p}, {pair.l}) is singular")
    new = _lift_digits(pair.p, pair.l, pair.n, r, 0, d.value, oracle)
    base = pair.digits()
    return DigitPair(pair.p, base.digit_list + tuple(new))


def lift_with_shift(
    pair: IrregularPair, r: int, oracle: BernoulliModOracle | None = None
) -> DigitPair:
    """lift_order with the minimal index shift making l' > (r-1)n legal.

    When a shift is applied, the digits are re-derived from zero
    positions; an unshifted run at the largest feasible r' reconciles the
    overlap, and any mismatch is a hard error.
    """
    if r < 2:
        raise ValueError("r must be >= 2")
    oracle = oracle or exact_oracle()
    p, l, n = pair.p, pair.l, pair.n
    u = (r - 1) * n
    phi = phi_pp(p, n)
    shift = 0 if l > u else (u - l) // phi + 1
    if shift == 0:
        return lift_order(pair, r, oracle)
    d = delta(p, l, n, oracle)
    if d.singular:
        raise SingularDeltaError(f"({p}, {l}) is singular")
    new = _lift_digits(p, l, n, r, shift, d.value, oracle)
    result = DigitPair(p, pair.digits().digit_list + tuple(new))
    r_feasible = min(r, (l - 1) // n + 1)
    if r_feasible >= 2:
        check = _lift_digits(p, l, n, r_feasible, 0, d.value, oracle)
        if check != new[: len(check)]:
            raise ArithmeticError(
                f"shifted digits disagree with unshifted run for ({p}, {l}): "
                f"{new[:len(check)]} vs {check}"
            )
    return result


def digits_to_order(
    p: int,
    l: int,
    order: int,
    oracle: BernoulliModOracle | None = None,
) -> DigitPair:
    """Digits s_1..s_order of the unique chain over (p, l) of first order."""
    if order == 1:
        return DigitPair(p, (l,))
    return lift_with_shift(IrregularPair(p, l, 1), order, oracle)


def build_singular_tree(
    pair: IrregularPair, depth: int, oracle: BernoulliModOracle
) -> SingularTree:
    """Expand the p-ary tree of related pairs for a singular pair.

    A node of order n grows its p children exactly when the oracle puts
    B(l)/l in p^(n+1) Z_p; every node inherits a singular difference.
    """
    d = delta(pair.p, pair.l, pair.n, oracle)
    if not d.singular:
        raise ValueError(f"({pair.p}, {pair.l}) is nonsingular: no tree to build")
    return _grow_tree(pair, depth, oracle)


def _grow_tree(pair: IrregularPair, depth: int, oracle: BernoulliModOracle) -> SingularTree:
    p, l, n = pair.p, pair.l, pair.n
    if depth <= 0 or oracle(l, p, n + 1) != 0:
        return SingularTree(pair, ())
    phi = phi_pp(p, n)
    kids = tuple(
        _grow_tree(IrregularPair(p, l + j * phi, n + 1), depth - 1, oracle)
        for j in range(p)
    )
    return SingularTree(pair, kids)
