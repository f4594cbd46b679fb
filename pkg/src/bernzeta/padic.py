"""p-adic integer approximations, valuations, and precision-aware helpers.

A PadicApprox is an element of Z_p known modulo p^k. Arithmetic never
claims more precision than the inputs justify: binary operations truncate
to the smaller k, and division by p or by factorials peels valuation
explicitly, failing loudly instead of truncating silently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PrecisionError
from .primes import is_prime

INFINITY = math.inf


def ord_p(q: int | Fraction, p: int) -> int | float:
    """Exact p-adic valuation of a rational; +inf for 0."""
    if p < 2 or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if q == 0:
        return INFINITY
    q = Fraction(q)
    v = 0
    num = q.numerator
    while num % p == 0:
        num //= p
        v += 1
    if v:
        return v
    den = q.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class ValuedRational:
    """A rational together with its valuation at one prime."""

    value: Fraction
    p: int
    ord: int | float

    @classmethod
    def of(cls, value: int | Fraction, p: int) -> "ValuedRational":
        return cls(Fraction(value), p, ord_p(value, p))

    def abs_p(self) -> Fraction | int:
        """|value|_p = p^-ord (0 for the zero element)."""
        if self.ord is INFINITY:
            return 0
        return Fraction(1, self.p**self.ord) if self.ord >= 0 else self.p ** (-self.ord)


@dataclass(frozen=True)
class PadicApprox:
    """A p-adic integer known modulo p^k, residue canonical in [0, p^k)."""

    p: int
    k: int
    residue: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("precision k must be >= 1")
        if not 0 <= self.residue < self.p**self.k:
            object.__setattr__(self, "residue", self.residue % self.p**self.k)

    @property
    def modulus(self) -> int:
        return self.p**self.k

    def with_precision(self, m: int) -> "PadicApprox":
        if m > self.k:
            raise PrecisionError(f"cannot lift precision {self.k} to {m}")
        return PadicApprox(self.p, m, self.residue % self.p**m)

    def _coerce(self, other) -> "PadicApprox":
        if isinstance(other, int):
            return PadicApprox(self.p, self.k, other % self.modulus)
        if isinstance(other, PadicApprox):
            if other.p != self.p:
                raise ValueError(f"prime mismatch: {self.p} vs {other.p}")
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        k = min(self.k, o.k)
        return PadicApprox(self.p, k, (self.residue + o.residue) % self.p**k)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        k = min(self.k, o.k)
        return PadicApprox(self.p, k, (self.residue - o.residue) % self.p**k)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return PadicApprox(self.p, self.k, -self.residue % self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        k = min(self.k, o.k)
        return PadicApprox(self.p, k, (self.residue * o.residue) % self.p**k)

    __rmul__ = __mul__

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def unit_inverse(self) -> "PadicApprox":
        if not self.is_unit():
            raise ZeroDivisionError(
                f"residue {self.residue} is divisible by {self.p}: peel the valuation first"
            )
        return PadicApprox(self.p, self.k, pow(self.residue, -1, self.modulus))

    def div_p(self, j: int = 1) -> "PadicApprox":
        """Exact division by p^j; requires p^j | residue and j < k."""
        pj = self.p**j
        if self.residue % pj != 0:
            raise ValueError(f"residue {self.residue} not divisible by {self.p}^{j}")
        if j >= self.k:
            raise PrecisionError(f"dividing by p^{j} leaves no precision (k={self.k})")
        return PadicApprox(self.p, self.k - j, self.residue // pj)

    def valuation(self) -> int | float:
        """ord_p of the residue, capped by the known precision (inf when
        the residue vanishes to full precision)."""
        if self.residue == 0:
            return INFINITY
        v = 0
        r = self.residue
        while r % self.p == 0:
            r //= self.p
            v += 1
        return v

    def congruent_to(self, other: "PadicApprox | int") -> bool:
        o = self._coerce(other)
        k = min(self.k, o.k)
        return (self.residue - o.residue) % self.p**k == 0


def from_rational(q: int | Fraction, p: int, k: int) -> PadicApprox:
    """Embed a p-integral rational modulo p^k."""
    q = Fraction(q)
    if q.denominator % p == 0:
        raise ValueError(f"{q} is not a {p}-adic integer")
    pk = p**k
    return PadicApprox(p, k, q.numerator * pow(q.denominator, -1, pk) % pk)


def psi_project(x: PadicApprox, n: int) -> int:
    """psi_n(x): the least nonnegative residue of x modulo p^n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if x.k < n:
        raise PrecisionError(f"x known only mod p^{x.k}, cannot project to p^{n}")
    return x.residue % x.p**n


def teichmuller(a: int, p: int, k: int = 2) -> PadicApprox:
    """omega(a) mod p^k for k in {2, 3}: the (p-1)-th root of unity
    congruent to a mod p, via a^p mod p^2 resp. a^p + p(a^p - a) mod p^3."""
    if not 0 < a < p:
        raise ValueError("need 0 < a < p")
    if p % 2 == 0 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    if k == 2:
        return PadicApprox(p, 2, pow(a, p, p * p))
    if k == 3:
        p3 = p**3
        ap = pow(a, p, p3)
        return PadicApprox(p, 3, (ap + p * (ap - a)) % p3)
    raise ValueError("k must be 2 or 3")


def finite_difference(values: list[PadicApprox], order: int | None = None) -> PadicApprox:
    """D^r f(0) = sum_{v=0}^r C(r,v) (-1)^v f(v) from the r+1 leading
    values of the sequence."""
    r = len(values) - 1 if order is None else order
    if len(values) != r + 1:
        raise ValueError(f"need exactly {r + 1} values for order {r}")
    p = values[0].p
    k = min(v.k for v in values)
    if any(v.p != p for v in values):
        raise ValueError("mixed primes in finite difference")
    pk = p**k
    acc = 0
    for v, f in enumerate(values):
        t = math.comb(r, v) * f.residue
        acc = acc - t if v % 2 else acc + t
    return PadicApprox(p, k, acc % pk)


def ord_p_factorial(j: int, p: int) -> int:
    """ord_p(j!) by Legendre's formula."""
    v = 0
    q = p
    while q <= j:
        v += j // q
        q *= p
    return v


def padic_binomial(x: PadicApprox, j: int, m: int) -> PadicApprox:
    """C(x, j) mod p^m.

    The product x(x-1)...(x-j+1) is formed at precision m + ord_p(j!) so
    the exact division by j! lands on precision m; raises PrecisionError
    when x carries too little precision for that guard.
    """
    if j < 0:
        raise ValueError("j must be >= 0")
    if m < 1:
        raise ValueError("m must be >= 1")
    if j == 0:
        return PadicApprox(x.p, m, 1 % x.p**m)
    p = x.p
    guard = ord_p_factorial(j, p)
    need = m + guard
    if x.k < need:
        raise PrecisionError(
            f"C(x, {j}) mod {p}^{m} needs x mod {p}^{need}, have {p}^{x.k}"
        )
    mod = p**need
    prod = 1
    xr = x.residue % mod
    for i in range(j):
        prod = prod * ((xr - i) % mod) % mod
    fact = math.factorial(j)
    pg = p**guard
    if prod % pg != 0:
        raise ArithmeticError("binomial product lost expected valuation")
    unit = fact // pg
    res = (prod // pg) * pow(unit, -1, p**m) % p**m
    return PadicApprox(p, m, res)
