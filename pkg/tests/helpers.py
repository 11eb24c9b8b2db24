"""Shared strategies and independent reference computations for the tests."""

from __future__ import annotations

import itertools
import math
import random
from fractions import Fraction

from hypothesis import strategies as st

from belyi.exact import RatPoly, is_squarefree

small_ints = st.integers(min_value=-9, max_value=9)
small_fracs = st.builds(Fraction, st.integers(-12, 12), st.integers(1, 6))


@st.composite
def polys(draw, min_degree=0, max_degree=4, coeffs=small_ints):
    deg = draw(st.integers(min_degree, max_degree))
    cs = draw(st.lists(coeffs, min_size=deg + 1, max_size=deg + 1))
    if deg > 0 and cs[-1] == 0:
        cs[-1] = 1
    return RatPoly(cs)


def nonconstant(max_degree=4):
    return polys(min_degree=1, max_degree=max_degree)


def sylvester_resultant(f: RatPoly, g: RatPoly) -> Fraction:
    """Determinant of the Sylvester matrix by plain Gaussian elimination."""
    m, n = f.degree, g.degree
    size = m + n
    if size == 0:
        return Fraction(1)
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + fc + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + gc + [Fraction(0)] * (size - n - 1 - i))
    det = Fraction(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if rows[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        det *= rows[col][col]
        for r in range(col + 1, size):
            factor = rows[r][col] / rows[col][col]
            if factor:
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return det


def divisors(n: int) -> list[int]:
    n = abs(n)
    return [k for k in range(1, n + 1) if n % k == 0]


def brute_rational_roots(f: RatPoly) -> list[Fraction]:
    """Rational root theorem by exhaustive divisor candidates."""
    cs = list(f.coeffs)
    lcm = 1
    for c in cs:
        lcm = math.lcm(lcm, c.denominator)
    ints = [int(c * lcm) for c in cs]
    roots = set()
    if ints[0] == 0:
        roots.add(Fraction(0))
    k = 0
    while ints[k] == 0:
        k += 1
    ints = ints[k:]
    if len(ints) == 1:
        return sorted(roots)
    for p, q in itertools.product(divisors(ints[0]), divisors(ints[-1])):
        for s in (1, -1):
            x = Fraction(s * p, q)
            if RatPoly(ints)(x) == 0:
                roots.add(x)
    return sorted(roots)


def random_squarefree(rng: random.Random, max_degree=4, bound=9) -> RatPoly:
    """A random squarefree polynomial with integer coefficients in [-bound, bound]."""
    while True:
        deg = rng.randint(1, max_degree)
        cs = [rng.randint(-bound, bound) for _ in range(deg)] + [rng.choice([c for c in range(-bound, bound + 1) if c])]
        f = RatPoly(cs)
        if is_squarefree(f):
            return f
