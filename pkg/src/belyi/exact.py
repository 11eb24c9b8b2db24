"""Exact rational arithmetic on the projective line.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator).  The point at infinity is the singleton :data:`INF`; it is
never encoded as a rational sentinel.  Polynomials are dense, ascending
coefficient tuples.

Integer-coefficient kernels (pseudo-remainders, subresultants, p-adic
root lifting) work on plain ``list[int]`` in ascending order and are kept
private to this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union


class Infinity:
    """The point at infinity of the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "oo"

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()

ExtPoint = Union[Fraction, Infinity]


def to_ext(x) -> ExtPoint:
    """Coerce ``x`` (int, Fraction, str such as ``"3/4"`` or ``"oo"``) to an ExtPoint."""
    if x is INF:
        return INF
    if isinstance(x, str) and x.strip().lower() in ("oo", "inf", "infinity"):
        return INF
    return Fraction(x)


def ext_key(x: ExtPoint):
    """Sort key: finite points ascending, then infinity."""
    return (1, Fraction(0)) if x is INF else (0, x)


def sorted_points(points: Iterable[ExtPoint]) -> list[ExtPoint]:
    """Deduplicate and sort a collection of ExtPoints."""
    seen = {}
    for x in points:
        x = to_ext(x)
        seen[ext_key(x)] = x
    return [seen[k] for k in sorted(seen)]


def format_ext(x: ExtPoint) -> str:
    return "oo" if x is INF else format_rational(x)


def format_rational(x: Fraction) -> str:
    """Render ``x`` as ``num/den`` (or a bare integer when den is 1)."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


def _strip(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


@dataclass(frozen=True)
class RatPoly:
    """Univariate polynomial over Q, coefficients in ascending degree order.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    coeffs: tuple

    def __init__(self, coeffs: Iterable = ()):
        cs = _strip([Fraction(c) for c in coeffs])
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def const(cls, c) -> "RatPoly":
        return cls([c])

    @classmethod
    def z(cls) -> "RatPoly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c=1) -> "RatPoly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "RatPoly":
        p = cls.const(lead)
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, x):
        if x is INF:
            if self.degree >= 1:
                return INF
            return self.coeffs[0] if self.coeffs else Fraction(0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __neg__(self):
        return RatPoly(-c for c in self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RatPoly(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if not isinstance(other, RatPoly):
            c = Fraction(other)
            return RatPoly(c * x for x in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RatPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return RatPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        result, base = RatPoly.const(1), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other):
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = 1 / other.lc
        quo = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            q = rem[k + dq] * inv
            quo[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        return RatPoly(quo), RatPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "RatPoly") -> bool:
        """True iff ``self`` divides ``other`` exactly."""
        return (other % self).is_zero()

    def monic(self) -> "RatPoly":
        if self.is_zero():
            raise ValueError("zero polynomial has no monic form")
        return self * (1 / self.lc)

    def derivative(self) -> "RatPoly":
        return poly_derivative(self)

    def compose(self, inner: "RatPoly") -> "RatPoly":
        return poly_compose(self, inner)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"RatPoly({format_poly(self)!r})"


def _as_poly(x) -> RatPoly:
    return x if isinstance(x, RatPoly) else RatPoly.const(x)


def format_poly(p: RatPoly, var: str = "z") -> str:
    """Human-readable form, highest degree first, e.g. ``27/4*z^3 - 27/2*z^2``."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = format_rational(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def poly_derivative(p: RatPoly) -> RatPoly:
    return RatPoly(k * c for k, c in enumerate(p.coeffs) if k)


def poly_compose(outer: RatPoly, inner: RatPoly) -> RatPoly:
    """``outer(inner(z))`` by Horner's scheme."""
    acc = RatPoly()
    for c in reversed(outer.coeffs):
        acc = acc * inner + c
    return acc


# -- integer kernels --------------------------------------------------------


def _primitive(p: RatPoly) -> tuple[Fraction, list[int]]:
    """Split ``p`` as ``content * P`` with P a primitive integer polynomial, lc(P) > 0."""
    if p.is_zero():
        return Fraction(0), []
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), [c // g for c in ints]


def _int_content(a: Sequence[int]) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
    return g


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) * a mod b."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(a) - len(b) + 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j, c in enumerate(b):
            r[shift + j] -= lr * c
        r.pop()
        _strip(r)
        e -= 1
    if e > 0:
        f = lb**e
        r = [c * f for c in r]
    return r


def _int_resultant(a: list[int], b: list[int]) -> int:
    """Subresultant PRS resultant of nonzero integer polynomials."""
    da, db = len(a) - 1, len(b) - 1
    if da == 0:
        return a[0] ** db
    if db == 0:
        return b[0] ** da
    ca, cb = _int_content(a), _int_content(b)
    a = [c // ca for c in a]
    b = [c // cb for c in b]
    t = ca**db * cb**da
    s = 1
    if da < db:
        a, b = b, a
        if da % 2 and db % 2:
            s = -1
    g = h = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = _int_prem(a, b)
        if not r:
            return 0
        a = b
        div = g * h**delta
        b = [c // div for c in r]
        g = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g**delta // h ** (delta - 1)
        if len(b) == 1:
            break
    da = len(a) - 1
    h = b[-1] ** da // h ** (da - 1) if da > 1 else (b[-1] if da == 1 else 1)
    return s * t * h


def _int_gcd_poly(a: list[int], b: list[int]) -> list[int]:
    """Primitive PRS gcd of integer polynomials (result primitive, lc > 0)."""
    if not b:
        a, b = b, a
    if not a:
        c = _int_content(b)
        out = [x // c for x in b]
        return out if out[-1] > 0 else [-x for x in out]
    if len(a) < len(b):
        a, b = b, a
    a = [x // _int_content(a) for x in a]
    b = [x // _int_content(b) for x in b]
    while b:
        r = _int_prem(a, b)
        a = b
        if r:
            c = _int_content(r)
            r = [x // c for x in r]
        b = r
    return a if a[-1] > 0 else [-x for x in a]


# -- gcd, squarefree part, resultant ----------------------------------------


def poly_gcd(f: RatPoly, g: RatPoly) -> RatPoly:
    """Monic greatest common divisor over Q."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    _, a = _primitive(f)
    _, b = _primitive(g)
    return RatPoly(_int_gcd_poly(a, b)).monic()


def squarefree_part(f: RatPoly) -> RatPoly:
    """Monic radical of ``f``: same roots, each simple."""
    if f.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if f.degree == 0:
        return RatPoly.const(1)
    return (f // poly_gcd(f, poly_derivative(f))).monic()


def is_squarefree(f: RatPoly) -> bool:
    return not f.is_zero() and poly_gcd(f, poly_derivative(f)).degree == 0


def resultant(f: RatPoly, g: RatPoly) -> Fraction:
    """Res(f, g) = lc(f)^deg(g) * prod g(a) over the roots a of f."""
    if f.is_zero() and g.is_zero():
        raise ValueError("resultant of two zero polynomials")
    if f.is_zero() or g.is_zero():
        other = g if f.is_zero() else f
        return Fraction(1) if other.degree == 0 else Fraction(0)
    cf, a = _primitive(f)
    cg, b = _primitive(g)
    return cf ** g.degree * cg ** f.degree * _int_resultant(a, b)


# -- rational roots ---------------------------------------------------------

_SMALL_PRIMES = [p for p in range(3, 2000) if all(p % q for q in range(2, int(p**0.5) + 1))]


def _eval_mod(a: Sequence[int], x: int, m: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % m
    return acc


def _choose_prime(a: list[int], da: list[int]) -> tuple[int, list[int]]:
    """A prime not dividing lc(a) at which every root of a mod p is simple."""
    for p in _SMALL_PRIMES:
        if a[-1] % p == 0:
            continue
        roots = [r for r in range(p) if _eval_mod(a, r, p) == 0]
        if all(_eval_mod(da, r, p) for r in roots):
            return p, roots
    raise ArithmeticError("no suitable prime found for root lifting")


def _rational_reconstruct(r: int, m: int, num_bound: int, den_bound: int):
    """u/v with u = r*v mod m, |u| <= num_bound, 0 < v <= den_bound, or None."""
    r0, r1 = m, r % m
    t0, t1 = 0, 1
    while r1 > num_bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > den_bound:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    if math.gcd(r1, t1) != 1:
        return None
    return Fraction(r1, t1)


def rational_roots(f: RatPoly) -> list[Fraction]:
    """All distinct rational roots of ``f``, ascending.

    Every root u/v of the primitive integer form has u | a_0 and v | a_n.
    Candidates are produced by Hensel-lifting the simple roots modulo a
    small prime and rationally reconstructing them, so no integer
    factorization of a_0 or a_n is needed; each candidate is confirmed by
    exact evaluation.
    """
    if f.is_zero():
        raise ValueError("rational roots of the zero polynomial")
    if f.degree <= 0:
        return []
    _, a = _primitive(squarefree_part(f))
    roots = []
    if a[0] == 0:
        roots.append(Fraction(0))
        a = a[1:]
    n = len(a) - 1
    if n == 0:
        return roots
    if n == 1:
        roots.append(Fraction(-a[0], a[1]))
        return sorted(roots)
    da = [k * c for k, c in enumerate(a) if k]
    p, mod_roots = _choose_prime(a, da)
    num_bound, den_bound = abs(a[0]), abs(a[-1])
    target = 2 * num_bound * den_bound + 1
    for r in mod_roots:
        m = p
        while m < target:
            m = m * m
            r = (r - _eval_mod(a, r, m) * pow(_eval_mod(da, r, m), -1, m)) % m
        cand = _rational_reconstruct(r, m, num_bound, den_bound)
        if cand is None:
            continue
        u, v = cand.numerator, cand.denominator
        if sum(c * u**k * v ** (n - k) for k, c in enumerate(a)) == 0:
            roots.append(cand)
    return sorted(set(roots))


# ---------------------------------------------------------------------------
# Algebraic sets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraicSet:
    """Conjugation-closed finite set of irrational algebraic numbers.

    Represented by its monic squarefree defining polynomial, which has no
    rational roots.  Rational members are always carried separately.
    """

    defining: RatPoly

    def __post_init__(self):
        f = self.defining
        if f.degree < 2:
            raise ValueError("an algebraic set needs a defining polynomial of degree >= 2")
        if f.lc != 1:
            raise ValueError("defining polynomial must be monic")
        if not is_squarefree(f):
            raise ValueError("defining polynomial must be squarefree")
        if rational_roots(f):
            raise ValueError("defining polynomial has rational roots")

    @property
    def size(self) -> int:
        return self.defining.degree

    @classmethod
    def split(cls, f: RatPoly) -> tuple[list[Fraction], "AlgebraicSet | None"]:
        """Split the root set of ``f`` into rational roots and an irrational residue."""
        h = squarefree_part(f)
        rats = rational_roots(h)
        if rats:
            h = h // RatPoly.from_roots(rats)
        return rats, (cls(h.monic()) if h.degree >= 1 else None)

    def __str__(self):
        return f"roots of {format_poly(self.defining)}"


def pushforward_set(
    aset: AlgebraicSet, p: RatPoly
) -> tuple[list[Fraction], AlgebraicSet | None]:
    """The image ``p(roots of aset)`` split into rational and irrational parts.

    The image is cut out by Res_x(A(x), y - p(x)) = prod (y - p(a)), which
    is monic of degree deg A in y.  It is recovered by exact interpolation
    from deg A + 1 univariate resultants.
    """
    if p.degree < 1:
        raise ValueError("pushforward along a constant polynomial")
    a = aset.defining
    n = a.degree
    reduced = p % a
    ys = list(range(n + 1))
    vals = [resultant(a, RatPoly.const(y) - reduced) for y in ys]
    image = _interpolate(ys, vals)
    return AlgebraicSet.split(image)


def _interpolate(xs: Sequence, ys: Sequence) -> RatPoly:
    """Newton divided-difference interpolation through (xs[i], ys[i])."""
    coef = [Fraction(y) for y in ys]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    result = RatPoly.const(coef[-1])
    for i in range(n - 2, -1, -1):
        result = result * RatPoly([-xs[i], 1]) + coef[i]
    return result


def push_points(points: Iterable[ExtPoint], p: RatPoly) -> list[ExtPoint]:
    """Images of ExtPoints under a non-constant polynomial (infinity is fixed)."""
    return sorted_points(p(x) for x in points)


def poly_critical_values(p: RatPoly) -> tuple[list[Fraction], AlgebraicSet | None, bool]:
    """Critical values of ``p`` as a self-map of the projective line.

    Returns ``(rationals, irrational, has_infinity)``; infinity is critical
    exactly when ``deg p >= 2``.
    """
    if p.degree < 1:
        raise ValueError("critical values of a constant polynomial")
    if p.degree == 1:
        return [], None, False
    crit_rats, crit_irr = AlgebraicSet.split(poly_derivative(p))
    values = [p(r) for r in crit_rats]
    irr = None
    if crit_irr is not None:
        more, irr = pushforward_set(crit_irr, p)
        values.extend(more)
    return sorted(set(values)), irr, True


# ---------------------------------------------------------------------------
# Moebius maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MobiusMap:
    """z -> (a z + b) / (c z + d) with rational entries and ad - bc != 0."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __init__(self, a, b, c, d):
        for name, v in zip("abcd", (a, b, c, d)):
            object.__setattr__(self, name, Fraction(v))
        if self.det == 0:
            raise ValueError("singular Moebius map")

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    @property
    def matrix(self):
        return ((self.a, self.b), (self.c, self.d))

    def is_identity(self) -> bool:
        return self.b == 0 and self.c == 0 and self.a == self.d

    def __call__(self, x: ExtPoint) -> ExtPoint:
        return mobius_apply(self, x)

    def compose(self, inner: "MobiusMap") -> "MobiusMap":
        """``self o inner`` (inner acts first)."""
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = inner.matrix
        return MobiusMap(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def push_set(self, aset: AlgebraicSet) -> AlgebraicSet:
        """Image of an algebraic set; irrational points never hit the pole."""
        inv = self.inverse()
        f = aset.defining
        n = f.degree
        num = RatPoly([inv.b, inv.a])
        den = RatPoly([inv.d, inv.c])
        g = RatPoly()
        for k, coeff in enumerate(f.coeffs):
            g = g + num**k * den ** (n - k) * coeff
        return AlgebraicSet(g.monic())

    def __str__(self):
        m = [format_rational(v) for v in (self.a, self.b, self.c, self.d)]
        return f"({m[0]}*z + {m[1]})/({m[2]}*z + {m[3]})"


def mobius_apply(m: MobiusMap, x: ExtPoint) -> ExtPoint:
    if x is INF:
        return INF if m.c == 0 else m.a / m.c
    den = m.c * x + m.d
    if den == 0:
        return INF
    return (m.a * x + m.b) / den


def mobius_three_point(p0: ExtPoint, p1: ExtPoint, p2: ExtPoint) -> MobiusMap:
    """The unique Moebius map sending p0, p1, p2 to 0, 1, infinity."""
    p0, p1, p2 = to_ext(p0), to_ext(p1), to_ext(p2)
    keys = {ext_key(p0), ext_key(p1), ext_key(p2)}
    if len(keys) != 3:
        raise ValueError("three-point normalization needs distinct points")
    if p0 is INF:
        return MobiusMap(0, p1 - p2, 1, -p2)
    if p1 is INF:
        return MobiusMap(1, -p0, 1, -p2)
    if p2 is INF:
        return MobiusMap(1, -p0, 0, p1 - p0)
    return MobiusMap(p1 - p2, -p0 * (p1 - p2), p1 - p0, -p2 * (p1 - p0))
