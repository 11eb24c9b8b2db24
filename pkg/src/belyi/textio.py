"""Text formats: polynomial and point-list input, chain documents.

Polynomials are sums of monomials in ``z`` with integer or ``a/b``
coefficients, e.g. ``"z^2 - 2"`` or ``"27/4*z^3 - 3z + 1/2"``.  Point
lists are comma separated rationals, with ``oo`` for infinity.

A chain document is JSON::

    {"format": "belyi-chain", "version": 1,
     "steps": [{"kind": "poly", "coeffs": ["-2", "0", "1"]},
               {"kind": "mobius", "matrix": [["1", "2"], ["0", "2"]]},
               {"kind": "belyi", "m": "7", "n": "9"}],
     "total_degree": 32, "provenance": {...}}

Polynomial coefficients are ascending.  A ``belyi`` step stands for
(m+n)^(m+n)/(m^m n^n) z^m (1-z)^n.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction

from belyi.chain import BelyiStep, MapChain, MobiusStep, PolyStep
from belyi.errors import InputError
from belyi.exact import ExtPoint, MobiusMap, RatPoly, format_rational, to_ext

if hasattr(sys, "set_int_max_str_digits"):
    # compact Belyi steps carry integers with tens of thousands of digits
    sys.set_int_max_str_digits(0)

FORMAT_TAG = "belyi-chain"
FORMAT_VERSION = 1


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, s: str) -> bool:
        self.skip_ws()
        if self.text.startswith(s, self.pos):
            self.pos += len(s)
            return True
        return False

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise InputError("expected an integer", start)
        return int(self.text[start : self.pos])


def parse_poly(text: str, var: str = "z") -> RatPoly:
    """Parse a sum of monomials in ``var``."""
    sc = _Scanner(text)
    coeffs: dict[int, Fraction] = {}
    if not sc.peek():
        raise InputError("empty polynomial", 0)
    first = True
    while sc.peek():
        sign = 1
        if sc.take("+"):
            pass
        elif sc.take("-"):
            sign = -1
        elif not first:
            raise InputError(f"expected '+' or '-', found {sc.peek()!r}", sc.pos)
        first = False
        coef = Fraction(1)
        has_coef = False
        if sc.peek().isdigit():
            num = sc.integer()
            den = 1
            if sc.take("/"):
                sc.skip_ws()
                at = sc.pos
                den = sc.integer()
                if den == 0:
                    raise InputError("zero denominator", at)
            coef = Fraction(num, den)
            has_coef = True
            sc.take("*")
        power = 0
        if sc.take(var):
            power = 1
            if sc.take("^") or sc.take("**"):
                power = sc.integer()
        elif not has_coef:
            raise InputError(f"expected a coefficient or {var!r}, found {sc.peek()!r}", sc.pos)
        coeffs[power] = coeffs.get(power, Fraction(0)) + sign * coef
    if not coeffs:
        raise InputError("empty polynomial", 0)
    top = max(coeffs)
    return RatPoly(coeffs.get(k, 0) for k in range(top + 1))


def parse_points(text: str) -> list[ExtPoint]:
    points = []
    offset = 0
    for raw in text.split(","):
        item = raw.strip()
        if not item:
            raise InputError("empty entry in point list", offset)
        try:
            points.append(to_ext(item))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad point {item!r}", offset) from None
        offset += len(raw) + 1
    return points


def _parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise InputError(f"{where}: expected a 'num/den' string, got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}: bad rational {value!r}") from None


def step_to_json(step) -> dict:
    if isinstance(step, PolyStep):
        return {"kind": "poly", "coeffs": [format_rational(c) for c in step.poly.coeffs]}
    if isinstance(step, MobiusStep):
        (a, b), (c, d) = step.mobius.matrix
        return {
            "kind": "mobius",
            "matrix": [[format_rational(a), format_rational(b)], [format_rational(c), format_rational(d)]],
        }
    return {"kind": "belyi", "m": str(step.m), "n": str(step.n)}


def chain_to_document(chain: MapChain, provenance: dict | None = None) -> dict:
    return {
        "format": FORMAT_TAG,
        "version": FORMAT_VERSION,
        "steps": [step_to_json(s) for s in chain.steps],
        "total_degree": chain.total_degree,
        "provenance": provenance or {},
    }


def dumps_chain(chain: MapChain, provenance: dict | None = None) -> str:
    return json.dumps(chain_to_document(chain, provenance), indent=2) + "\n"


def _step_from_json(i: int, obj) -> object:
    where = f"step {i}"
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    kind = obj.get("kind")
    try:
        if kind == "poly":
            coeffs = obj.get("coeffs")
            if not isinstance(coeffs, list):
                raise InputError(f"{where}: 'coeffs' must be a list")
            return PolyStep(RatPoly(_parse_rational(c, where) for c in coeffs))
        if kind == "mobius":
            mat = obj.get("matrix")
            if not (isinstance(mat, list) and len(mat) == 2 and all(isinstance(r, list) and len(r) == 2 for r in mat)):
                raise InputError(f"{where}: 'matrix' must be 2x2")
            (a, b), (c, d) = [[_parse_rational(v, where) for v in row] for row in mat]
            return MobiusStep(MobiusMap(a, b, c, d))
        if kind == "belyi":
            m, n = obj.get("m"), obj.get("n")
            try:
                return BelyiStep(int(m), int(n))
            except (TypeError, ValueError):
                raise InputError(f"{where}: 'm' and 'n' must be integers") from None
    except InputError:
        raise
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from None
    raise InputError(f"{where}: unknown step kind {kind!r}")


def document_to_chain(doc) -> MapChain:
    if not isinstance(doc, dict):
        raise InputError("chain document must be a JSON object")
    if doc.get("format", FORMAT_TAG) != FORMAT_TAG:
        raise InputError(f"unknown document format {doc.get('format')!r}")
    if doc.get("version", FORMAT_VERSION) != FORMAT_VERSION:
        raise InputError(f"unsupported document version {doc.get('version')!r}")
    steps = doc.get("steps")
    if not isinstance(steps, list) or not steps:
        raise InputError("document needs a non-empty 'steps' list")
    chain = MapChain(_step_from_json(i, s) for i, s in enumerate(steps))
    declared = doc.get("total_degree")
    if declared is not None and declared != chain.total_degree:
        raise InputError(f"total_degree {declared} does not match the steps ({chain.total_degree})")
    return chain


def loads_chain(text: str) -> MapChain:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from None
    return document_to_chain(doc)
