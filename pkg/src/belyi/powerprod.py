"""Power products and factored polynomials with huge exponents.

A polynomial ``K * prod (z - r_i)**e_i`` with rational roots can have a
degree far too large to expand (the collapsing factor has degree m + n,
which is routinely 10**6 or more).  Its values at rational points are
still exact: every factor is a rational number, so the value is a signed
product of integer powers.  Reducing that product over a pairwise coprime
base decides exactly whether it equals 0 or 1 without expanding, and
expansion is only attempted under a digit budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from belyi.errors import ResourceLimitError
from belyi.exact import INF, AlgebraicSet, ExtPoint, RatPoly, pushforward_set

DEFAULT_MAX_DIGITS = 100_000


@dataclass(frozen=True)
class PowerProduct:
    """sign * prod(base**exp) with integer bases >= 2, exponents nonzero."""

    sign: int
    powers: tuple  # sorted ((base, exp), ...)

    @classmethod
    def build(cls, sign: int, powers: Iterable[tuple[int, int]]) -> "PowerProduct":
        if sign == 0:
            return cls(0, ())
        return cls(1 if sign > 0 else -1, _coprime_reduce(powers))

    @classmethod
    def from_rational(cls, x, exp: int = 1) -> "PowerProduct":
        x = Fraction(x)
        if x == 0:
            if exp <= 0:
                raise ZeroDivisionError("zero to a nonpositive power")
            return cls(0, ())
        sign = -1 if (x < 0 and exp % 2) else 1
        num, den = abs(x.numerator), x.denominator
        return cls.build(sign, [(num, exp), (den, -exp)])

    def __mul__(self, other: "PowerProduct") -> "PowerProduct":
        if self.sign == 0 or other.sign == 0:
            return PowerProduct(0, ())
        return PowerProduct.build(self.sign * other.sign, self.powers + other.powers)

    def __pow__(self, e: int) -> "PowerProduct":
        if self.sign == 0:
            if e <= 0:
                raise ZeroDivisionError("zero to a nonpositive power")
            return self
        sign = -1 if (self.sign < 0 and e % 2) else 1
        return PowerProduct.build(sign, [(b, x * e) for b, x in self.powers])

    def is_zero(self) -> bool:
        return self.sign == 0

    def is_one(self) -> bool:
        return self.sign == 1 and not self.powers

    def digits(self) -> float:
        """Rough decimal size of the expanded numerator plus denominator."""
        total = 0.0
        for b, e in self.powers:
            if abs(e).bit_length() > 1000:
                return math.inf
            total += abs(e) * math.log10(b)
        return total

    def to_fraction(self, max_digits: int = DEFAULT_MAX_DIGITS) -> Fraction:
        if self.sign == 0:
            return Fraction(0)
        if self.digits() > max_digits:
            raise ResourceLimitError(
                f"exact value needs about {self.digits():.3g} digits (limit {max_digits})"
            )
        num = den = 1
        for b, e in self.powers:
            if e > 0:
                num *= b**e
            else:
                den *= b ** (-e)
        return Fraction(self.sign * num, den)


def _strip(a: int, g: int) -> tuple[int, int]:
    """(a / g**k, k) with k maximal; g > 1 divides a."""
    tower = [g]
    while a % (tower[-1] * tower[-1]) == 0:
        tower.append(tower[-1] * tower[-1])
    k = 0
    for i in range(len(tower) - 1, -1, -1):
        if a % tower[i] == 0:
            a //= tower[i]
            k += 1 << i
    return a, k


def _coprime_reduce(powers: Iterable[tuple[int, int]]) -> tuple:
    """Rewrite prod b**e over a pairwise coprime base; drop trivial entries."""
    work: dict[int, int] = {}
    for b, e in powers:
        if b < 1:
            raise ValueError("power product bases must be positive")
        if b == 1 or e == 0:
            continue
        work[b] = work.get(b, 0) + e
    changed = True
    while changed:
        changed = False
        bases = [b for b, e in work.items() if e != 0 and b != 1]
        work = {b: work[b] for b in bases}
        for i in range(len(bases)):
            for j in range(i + 1, len(bases)):
                a, c = bases[i], bases[j]
                g = math.gcd(a, c)
                if g == 1:
                    continue
                ea, ec = work.pop(a), work.pop(c)
                a, ka = _strip(a, g)
                c, kc = _strip(c, g)
                for b, e in ((a, ea), (c, ec), (g, ka * ea + kc * ec)):
                    if b != 1 and e != 0:
                        work[b] = work.get(b, 0) + e
                changed = True
                break
            if changed:
                break
    return tuple(sorted((b, e) for b, e in work.items() if e != 0 and b != 1))


@dataclass(frozen=True)
class FactoredPoly:
    """constant * prod (z - root)**exp with distinct rational roots."""

    constant: PowerProduct
    factors: tuple  # ((root, exp), ...)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.factors)

    def evaluate(self, x: ExtPoint, max_digits: int = DEFAULT_MAX_DIGITS) -> ExtPoint:
        if x is INF:
            return INF if self.degree >= 1 else self.constant.to_fraction(max_digits)
        x = Fraction(x)
        value = self.constant
        for r, e in self.factors:
            if x == r:
                return Fraction(0)
            value = value * PowerProduct.from_rational(x - r, e)
        return value.to_fraction(max_digits)

    def log_derivative_numerator(self) -> RatPoly:
        """sum_i e_i prod_{j != i} (z - r_j); its roots are the non-root critical points."""
        total = RatPoly()
        for i, (_, e) in enumerate(self.factors):
            term = RatPoly.const(e)
            for j, (r, _) in enumerate(self.factors):
                if j != i:
                    term = term * RatPoly([-r, 1])
            total = total + term
        return total

    def reduce_mod(self, modulus: RatPoly, max_digits: int = DEFAULT_MAX_DIGITS) -> RatPoly:
        """This polynomial reduced modulo ``modulus`` by square-and-multiply."""
        if self.degree > max_digits:
            raise ResourceLimitError(
                f"reduction of a degree-{self.degree} factored polynomial exceeds limit {max_digits}"
            )
        acc = RatPoly.const(self.constant.to_fraction(max_digits)) % modulus
        for r, e in self.factors:
            acc = acc * _pow_mod(RatPoly([-r, 1]), e, modulus) % modulus
        return acc

    def pushforward(
        self, aset: AlgebraicSet, max_digits: int = DEFAULT_MAX_DIGITS
    ) -> tuple[list[Fraction], AlgebraicSet | None]:
        reduced = self.reduce_mod(aset.defining, max_digits)
        if reduced.degree < 1:
            return [reduced(0)], None
        return pushforward_set(aset, reduced)

    def to_poly(self, max_digits: int = DEFAULT_MAX_DIGITS) -> RatPoly:
        p = RatPoly.const(self.constant.to_fraction(max_digits))
        for r, e in self.factors:
            p = p * RatPoly([-r, 1]) ** e
        return p


def _pow_mod(base: RatPoly, e: int, modulus: RatPoly) -> RatPoly:
    result = RatPoly.const(1) % modulus
    base = base % modulus
    while e:
        if e & 1:
            result = result * base % modulus
        e >>= 1
        if e:
            base = base * base % modulus
    return result


def belyi_factored(m: int, n: int) -> FactoredPoly:
    """(m+n)^(m+n) / (m^m n^n) * z^m (1 - z)^n in factored form."""
    if m < 1 or n < 1:
        raise ValueError("exponents must be positive")
    s = m + n
    sign = -1 if n % 2 else 1  # (1 - z)^n = (-1)^n (z - 1)^n
    const = PowerProduct.build(sign, [(s, s), (m, -m), (n, -n)])
    return FactoredPoly(const, ((Fraction(0), m), (Fraction(1), n)))
