"""Composition chains of polynomial and Moebius steps.

A :class:`MapChain` lists its steps in the order they act: the first step
is applied first.  Three step kinds exist:

* :class:`PolyStep` -- a dense polynomial with rational coefficients;
* :class:`MobiusStep` -- a fractional linear transformation;
* :class:`BelyiStep` -- the collapsing polynomial
  ``(m+n)^(m+n) / (m^m n^n) * z^m (1-z)^n`` kept in compact form, because
  its degree ``m + n`` is often far too large to expand.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from belyi.errors import ResourceLimitError
from belyi.exact import (
    INF,
    AlgebraicSet,
    ExtPoint,
    MobiusMap,
    RatPoly,
    format_poly,
    poly_gcd,
    pushforward_set,
    sorted_points,
    to_ext,
)
from belyi.powerprod import DEFAULT_MAX_DIGITS, FactoredPoly, belyi_factored

DEFAULT_EXPAND_CAP = 10_000


def belyi_step(m: int, n: int) -> RatPoly:
    """The collapsing polynomial (m+n)^(m+n)/(m^m n^n) z^m (1-z)^n, expanded.

    It sends 0 and 1 to 0, infinity to infinity and m/(m+n) to 1, and its
    only critical points are 0, 1, m/(m+n).
    """
    if m < 1 or n < 1:
        raise ValueError(f"belyi_step needs positive exponents, got ({m}, {n})")
    s = m + n
    const = Fraction(s**s, m**m * n**n)
    return RatPoly.monomial(m, const) * RatPoly([1, -1]) ** n


@dataclass(frozen=True)
class PolyStep:
    poly: RatPoly

    def __post_init__(self):
        if self.poly.degree < 1:
            raise ValueError("a polynomial step must be non-constant")

    @property
    def degree(self) -> int:
        return self.poly.degree

    def apply(self, x: ExtPoint, max_digits: int = DEFAULT_MAX_DIGITS) -> ExtPoint:
        return self.poly(x)

    def push_set(self, aset: AlgebraicSet, max_digits: int = DEFAULT_MAX_DIGITS):
        return pushforward_set(aset, self.poly)

    def __str__(self):
        return format_poly(self.poly)


@dataclass(frozen=True)
class MobiusStep:
    mobius: MobiusMap

    degree = 1

    def apply(self, x: ExtPoint, max_digits: int = DEFAULT_MAX_DIGITS) -> ExtPoint:
        return self.mobius(x)

    def push_set(self, aset: AlgebraicSet, max_digits: int = DEFAULT_MAX_DIGITS):
        return [], self.mobius.push_set(aset)

    def __str__(self):
        return str(self.mobius)


@dataclass(frozen=True)
class BelyiStep:
    m: int
    n: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("a Belyi step needs positive exponents")

    @property
    def degree(self) -> int:
        return self.m + self.n

    @property
    def factored(self) -> FactoredPoly:
        return belyi_factored(self.m, self.n)

    def apply(self, x: ExtPoint, max_digits: int = DEFAULT_MAX_DIGITS) -> ExtPoint:
        return self.factored.evaluate(x, max_digits)

    def push_set(self, aset: AlgebraicSet, max_digits: int = DEFAULT_MAX_DIGITS):
        return self.factored.pushforward(aset, max_digits)

    def to_poly(self) -> RatPoly:
        return belyi_step(self.m, self.n)

    def __str__(self):
        return f"q[{self.m},{self.n}] = C*z^{self.m}*(1 - z)^{self.n}"


ChainStep = Union[PolyStep, MobiusStep, BelyiStep]


@dataclass(frozen=True)
class MapChain:
    steps: tuple

    def __init__(self, steps: Iterable[ChainStep]):
        steps = tuple(steps)
        if not steps:
            raise ValueError("a map chain needs at least one step")
        object.__setattr__(self, "steps", steps)

    @classmethod
    def identity(cls) -> "MapChain":
        return cls([MobiusStep(MobiusMap.identity())])

    @property
    def total_degree(self) -> int:
        d = 1
        for s in self.steps:
            d *= s.degree
        return d

    @property
    def degrees(self) -> list[int]:
        return [s.degree for s in self.steps]

    def __len__(self):
        return len(self.steps)

    def is_identity(self) -> bool:
        return all(isinstance(s, MobiusStep) and s.mobius.is_identity() for s in self.steps)

    def then(self, other: "MapChain") -> "MapChain":
        """``other o self`` with identity Moebius steps dropped."""
        steps = [
            s
            for s in self.steps + other.steps
            if not (isinstance(s, MobiusStep) and s.mobius.is_identity())
        ]
        return MapChain(steps) if steps else MapChain.identity()

    def apply(self, x, max_digits: int = DEFAULT_MAX_DIGITS) -> ExtPoint:
        x = to_ext(x)
        for s in self.steps:
            x = s.apply(x, max_digits)
        return x

    __call__ = apply

    def push(
        self,
        rationals: Iterable[ExtPoint],
        irrational: AlgebraicSet | None = None,
        max_digits: int = DEFAULT_MAX_DIGITS,
    ) -> tuple[list[ExtPoint], AlgebraicSet | None]:
        """Image of a point set given as (rational points, irrational residue)."""
        rats = sorted_points(rationals)
        irr = irrational
        for s in self.steps:
            rats = [s.apply(x, max_digits) for x in rats]
            if irr is not None:
                more, irr = s.push_set(irr, max_digits)
                rats.extend(more)
            rats = sorted_points(rats)
        return rats, irr


def chain_compose_partial(chain: MapChain, from_index: int) -> MapChain:
    """The steps of ``chain`` from ``from_index`` on, as one chain.

    ``from_index == len(chain)`` gives the identity.
    """
    if not 0 <= from_index <= len(chain):
        raise IndexError(f"suffix index {from_index} outside 0..{len(chain)}")
    rest = chain.steps[from_index:]
    return MapChain(rest) if rest else MapChain.identity()


def expand(chain: MapChain, cap: int = DEFAULT_EXPAND_CAP) -> tuple[RatPoly, RatPoly]:
    """The composed rational map as a coprime (numerator, denominator) pair.

    The denominator is monic.  Chains whose total degree exceeds ``cap``
    are refused before any arithmetic happens.
    """
    degree = chain.total_degree
    if degree > cap:
        raise ResourceLimitError(f"expansion would have degree {degree}, above the cap {cap}")
    num, den = RatPoly.z(), RatPoly.const(1)
    for s in chain.steps:
        if isinstance(s, MobiusStep):
            m = s.mobius
            num, den = num * m.a + den * m.b, num * m.c + den * m.d
        else:
            p = s.poly if isinstance(s, PolyStep) else s.to_poly()
            d = p.degree
            new_num = RatPoly()
            for k, c in enumerate(p.coeffs):
                new_num = new_num + num**k * den ** (d - k) * c
            num, den = new_num, den**d
        g = poly_gcd(num, den)
        num, den = num // g, den // g
    lc = den.lc
    return num * (1 / lc), den * (1 / lc)
