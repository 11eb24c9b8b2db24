"""Critical values of map chains and the Belyi test.

The chain-rule route (:func:`crit_chain`) computes each step's own
critical values and pushes them through the rest of the chain.  Two
independent checks exist for cross-validation:

* :func:`verify_polynomial_direct` -- a polynomial has its finite critical
  values in {0, 1} iff the radical of p' divides p (p - 1);
* :func:`rational_function_critical_values` -- critical values of an
  expanded map N/D read off the Wronskian N'D - ND' directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from belyi.chain import BelyiStep, MapChain, MobiusStep, PolyStep, chain_compose_partial
from belyi.exact import (
    INF,
    AlgebraicSet,
    ExtPoint,
    RatPoly,
    poly_critical_values,
    poly_derivative,
    poly_gcd,
    rational_roots,
    sorted_points,
    squarefree_part,
)
from belyi.powerprod import DEFAULT_MAX_DIGITS, FactoredPoly

_BELYI_VALUES = (Fraction(0), Fraction(1), INF)


@dataclass
class StepCrit:
    index: int
    kind: str
    degree: int
    rationals: list  # the step's own critical values
    irrational: RatPoly | None
    pushed_rationals: list  # the same values after the rest of the chain
    pushed_irrational: RatPoly | None


@dataclass
class CritReport:
    rational_values: list
    irrational_defining: RatPoly | None
    per_step: list = field(default_factory=list)

    @property
    def offending(self) -> list:
        return [x for x in self.rational_values if not any(x == t for t in _BELYI_VALUES)]


def union_sets(a: AlgebraicSet | None, b: AlgebraicSet | None) -> AlgebraicSet | None:
    if a is None:
        return b
    if b is None:
        return a
    if a == b:
        return a
    return AlgebraicSet(squarefree_part(a.defining * b.defining))


def factored_critical_values(
    fp: FactoredPoly, max_digits: int = DEFAULT_MAX_DIGITS
) -> tuple[list[ExtPoint], AlgebraicSet | None]:
    """Critical values of a factored polynomial via its logarithmic derivative.

    p'/p = sum e_i / (z - r_i), so the critical points are the roots with
    e_i >= 2 together with the roots of sum e_i prod_{j != i} (z - r_j).
    """
    points = [r for r, e in fp.factors if e >= 2]
    irr = None
    L = fp.log_derivative_numerator()
    if L.degree >= 1:
        more, irr_pts = AlgebraicSet.split(L)
        points.extend(more)
        if irr_pts is not None:
            vals, irr = fp.pushforward(irr_pts, max_digits)
            points_values = vals
        else:
            points_values = []
    else:
        points_values = []
    values = [fp.evaluate(r, max_digits) for r in points] + points_values
    if fp.degree >= 2:
        values.append(INF)
    return sorted_points(values), irr


def step_critical_values(step, max_digits: int = DEFAULT_MAX_DIGITS):
    if isinstance(step, MobiusStep):
        return [], None
    if isinstance(step, BelyiStep):
        return factored_critical_values(step.factored, max_digits)
    rats, irr, has_inf = poly_critical_values(step.poly)
    return sorted_points(rats + ([INF] if has_inf else [])), irr


def crit_chain(chain: MapChain, max_digits: int = DEFAULT_MAX_DIGITS) -> CritReport:
    """Critical values of the composed map, by Crit(g o f) = Crit(g) u g(Crit(f))."""
    all_rats: list = []
    all_irr = None
    per_step = []
    for i, step in enumerate(chain.steps):
        rats, irr = step_critical_values(step, max_digits)
        suffix = chain_compose_partial(chain, i + 1)
        pushed_rats, pushed_irr = suffix.push(rats, irr, max_digits)
        per_step.append(
            StepCrit(
                index=i,
                kind=_kind(step),
                degree=step.degree,
                rationals=rats,
                irrational=irr.defining if irr is not None else None,
                pushed_rationals=pushed_rats,
                pushed_irrational=pushed_irr.defining if pushed_irr is not None else None,
            )
        )
        all_rats.extend(pushed_rats)
        all_irr = union_sets(all_irr, pushed_irr)
    return CritReport(
        rational_values=sorted_points(all_rats),
        irrational_defining=all_irr.defining if all_irr is not None else None,
        per_step=per_step,
    )


def _kind(step) -> str:
    if isinstance(step, PolyStep):
        return "poly"
    if isinstance(step, MobiusStep):
        return "mobius"
    return "belyi"


def is_belyi(chain: MapChain, max_digits: int = DEFAULT_MAX_DIGITS) -> tuple[bool, CritReport]:
    report = crit_chain(chain, max_digits)
    ok = report.irrational_defining is None and not report.offending
    return ok, report


def verify_polynomial_direct(p: RatPoly) -> bool:
    if p.degree < 1:
        raise ValueError("direct verification needs a non-constant polynomial")
    if p.degree == 1:
        return True
    radical = squarefree_part(poly_derivative(p))
    return radical.divides(p * (p - 1))


# -- direct critical values of an expanded rational map ---------------------


def _inverse_mod(a: RatPoly, modulus: RatPoly) -> RatPoly:
    r0, r1 = modulus, a % modulus
    s0, s1 = RatPoly(), RatPoly.const(1)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise ZeroDivisionError("not invertible modulo the given polynomial")
    return (s0 * (1 / r0.lc)) % modulus


def minimal_polynomial_mod(element: RatPoly, modulus: RatPoly) -> RatPoly:
    """Monic minimal polynomial of ``element`` in Q[x]/(modulus).

    For squarefree ``modulus`` the algebra is reduced, so the result is
    squarefree and its roots are exactly the values element(a) over the
    roots a of ``modulus``.
    """
    n = modulus.degree
    basis: list[tuple[int, list, list]] = []  # (pivot, reduced vector, combination)
    power = RatPoly.const(1)
    k = 0
    while True:
        vec = list(power.coeffs) + [Fraction(0)] * (n - len(power.coeffs))
        comb = [Fraction(0)] * (k + 1)
        comb[k] = Fraction(1)
        for pivot, bvec, bcomb in basis:
            c = vec[pivot]
            if c:
                vec = [v - c * b for v, b in zip(vec, bvec)]
                for j, bc in enumerate(bcomb):
                    comb[j] -= c * bc
        pivot = next((i for i, v in enumerate(vec) if v), None)
        if pivot is None:
            return RatPoly(comb).monic()
        inv = 1 / vec[pivot]
        basis.append((pivot, [v * inv for v in vec], [c * inv for c in comb]))
        power = power * element % modulus
        k += 1


def rational_function_critical_values(
    num: RatPoly, den: RatPoly
) -> tuple[list[ExtPoint], AlgebraicSet | None]:
    """Critical values of z -> num/den (coprime, non-constant) on the projective line.

    Finite critical points and multiple poles are the zeros of the
    Wronskian W = num' den - num den'; infinity is critical when
    2 deg - 2 exceeds deg W.
    """
    degree = max(num.degree, den.degree)
    if degree < 1:
        raise ValueError("constant map has no critical values")
    w = poly_derivative(num) * den - num * poly_derivative(den)
    values: list = []
    irr = None
    if w.degree >= 1:
        radical = squarefree_part(w)
        poles = poly_gcd(radical, den)
        if poles.degree >= 1:
            values.append(INF)
            radical = radical // poles
        rats, rest = AlgebraicSet.split(radical)
        values.extend(num(r) / den(r) for r in rats)
        if rest is not None:
            a = rest.defining
            element = num * _inverse_mod(den, a) % a
            img_rats, irr = AlgebraicSet.split(minimal_polynomial_mod(element, a))
            values.extend(img_rats)
    if 2 * degree - 2 > max(w.degree, 0):
        if num.degree > den.degree:
            values.append(INF)
        elif num.degree < den.degree:
            values.append(Fraction(0))
        else:
            values.append(num.lc / den.lc)
    return sorted_points(values), irr
