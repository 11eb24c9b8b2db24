"""Construction of a Belyi map for algebraic point data.

Stage one pushes a conjugation-closed set of algebraic numbers, together
with every critical value created along the way, into Q and infinity by
repeatedly applying the set's own defining polynomial.  Stage two
collapses a finite set of rational points onto {0, 1, infinity} with
Moebius normalizations and the polynomials z^m (1-z)^n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from belyi.chain import (
    BelyiStep,
    MapChain,
    MobiusStep,
    PolyStep,
    belyi_step,
    chain_compose_partial,
    expand,
)
from belyi.exact import (
    INF,
    AlgebraicSet,
    ExtPoint,
    MobiusMap,
    ext_key,
    mobius_three_point,
    poly_critical_values,
    sorted_points,
)
from belyi.powerprod import DEFAULT_MAX_DIGITS

__all__ = [
    "BelyiConstruction",
    "belyi_map",
    "construct",
    "belyi_step",
    "chain_compose_partial",
    "collapse_to_three",
    "expand",
    "reduce_to_rational",
    "select_normalization",
]

# collapsing factors of degree above this are kept in compact form
DENSE_DEGREE_LIMIT = 24

_TARGETS = (Fraction(0), Fraction(1), INF)


def reduce_to_rational(
    S: AlgebraicSet | None, extra_rationals: Iterable[ExtPoint] = ()
) -> tuple[MapChain, list[ExtPoint]]:
    """Polynomial chain p with p(S), Crit(p) and p(extras) all in Q u {oo}.

    Returns the chain and the tracked rational set T.
    """
    tracked = sorted_points(extra_rationals)
    steps = []
    irr = S
    while irr is not None:
        p = irr.defining
        crit_rats, crit_irr, has_inf = poly_critical_values(p)
        images = [p(x) for x in tracked]
        images.append(Fraction(0))  # p vanishes on the current set
        images.extend(crit_rats)
        if has_inf:
            images.append(INF)
        tracked = sorted_points(images)
        if crit_irr is not None:
            assert crit_irr.size < irr.size, "irrational residue must shrink"
        steps.append(PolyStep(p))
        irr = crit_irr
    chain = MapChain(steps) if steps else MapChain.identity()
    return chain, tracked


def _height(x: ExtPoint) -> int:
    if x is INF:
        return 1
    return max(abs(x.numerator), x.denominator)


def _tie_key(x: ExtPoint):
    return (_height(x), ext_key(x))


def select_normalization(T: Iterable[ExtPoint]) -> tuple[MobiusMap, Fraction, list[ExtPoint]]:
    """Choose three points of T for 0, 1, oo so that a fourth lands in (0, 1).

    Every ordered triple is tried.  The winner minimizes m + n where the
    fourth image is m/(m+n) in lowest terms; ties go to the lexicographically
    least source triple, sorted by (height, position), then to the least
    ordered triple.  Returns the map, the fourth image and the images of
    the remaining points.
    """
    points = sorted_points(T)
    if len(points) < 4:
        raise ValueError("normalization needs at least four distinct points")
    # cross-ratios from homogeneous coordinates, one gcd per candidate
    hom = [(1, 0) if p is INF else (p.numerator, p.denominator) for p in points]
    k = len(points)
    br = [[hom[i][0] * hom[j][1] - hom[j][0] * hom[i][1] for j in range(k)] for i in range(k)]
    ties = [_tie_key(p) for p in points]
    best = None
    for i0, i1, i2 in itertools.permutations(range(k), 3):
        for j in range(k):
            if j in (i0, i1, i2):
                continue
            num = br[j][i0] * br[i1][i2]
            den = br[j][i2] * br[i1][i0]
            if den < 0:
                num, den = -num, -den
            if not 0 < num < den:
                continue
            y = Fraction(num, den)
            key = (
                y.denominator,
                tuple(sorted((ties[i0], ties[i1], ties[i2]))),
                (ties[i0], ties[i1], ties[i2]),
                y,
            )
            if best is None or key < best[0]:
                best = (key, (i0, i1, i2), j)
    if best is None:
        raise ArithmeticError("no admissible normalization found")
    key, idx, j = best
    m = mobius_three_point(*(points[i] for i in idx))
    fourth = key[3]
    assert m(points[j]) == fourth
    rest = sorted_points(m(p) for i, p in enumerate(points) if i not in idx and i != j)
    return m, fourth, rest


def collapsing_step(m: int, n: int, dense_limit: int = DENSE_DEGREE_LIMIT):
    if m + n <= dense_limit:
        return PolyStep(belyi_step(m, n))
    return BelyiStep(m, n)


def _final_normalization(points: list[ExtPoint]) -> MobiusMap:
    """A Moebius map sending at most three points into {0, 1, oo}."""
    if all(any(p == t for t in _TARGETS) for p in points):
        return MobiusMap.identity()
    finite = [p for p in points if p is not INF]
    if len(points) == 3:
        return mobius_three_point(*points)
    if len(points) == 2 and INF not in points:
        return mobius_three_point(points[0], points[1], INF)
    # one finite point, possibly together with infinity
    return MobiusMap(1, -finite[0], 0, 1)


def collapse_to_three(
    T: Iterable[ExtPoint],
    max_digits: int = DEFAULT_MAX_DIGITS,
    dense_limit: int = DENSE_DEGREE_LIMIT,
) -> MapChain:
    """Chain q with q(T) and Crit(q) inside {0, 1, oo}."""
    points = sorted_points(T)
    steps = []
    while len(points) > 3:
        m, fourth, _ = select_normalization(points)
        step = collapsing_step(fourth.numerator, fourth.denominator - fourth.numerator, dense_limit)
        if not m.is_identity():
            steps.append(MobiusStep(m))
        steps.append(step)
        images = sorted_points(step.apply(m(p), max_digits) for p in points)
        assert len(images) < len(points), "collapse round must remove a point"
        points = images
    steps.append(MobiusStep(_final_normalization(points)))
    return MapChain([MobiusStep(MobiusMap.identity())]).then(MapChain(steps))


@dataclass(frozen=True)
class BelyiConstruction:
    rational_stage: MapChain
    tracked: list  # rational points left after the first stage
    collapse_stage: MapChain
    chain: MapChain


def construct(
    S: AlgebraicSet | None,
    extras: Iterable[ExtPoint] = (),
    max_digits: int = DEFAULT_MAX_DIGITS,
    dense_limit: int = DENSE_DEGREE_LIMIT,
) -> BelyiConstruction:
    """Both stages of the construction, kept apart for reporting."""
    first, T = reduce_to_rational(S, extras)
    second = collapse_to_three(T, max_digits, dense_limit)
    return BelyiConstruction(first, T, second, first.then(second))


def belyi_map(
    S: AlgebraicSet | None,
    extras: Iterable[ExtPoint] = (),
    max_digits: int = DEFAULT_MAX_DIGITS,
    dense_limit: int = DENSE_DEGREE_LIMIT,
) -> MapChain:
    """Belyi map sending S and the extra points into {0, 1, oo}."""
    return construct(S, extras, max_digits, dense_limit).chain
