"""Coverings of the thrice-punctured sphere as permutation pairs.

A degree-d covering branched over {0, 1, oo} is a pair (sigma0, sigma1)
of permutations of {0, ..., d-1} generating a transitive group, taken up
to simultaneous conjugation; sigma_inf is defined by
sigma0 * sigma1 * sigma_inf = 1.  Products act left to right: ``p * q``
applies p first.  Permutations are stored 0-based as image tuples and
shown 1-based.

Counts of pointed coverings (subgroups of index d in the free group of
rank 2) come from Hall's recursion; the brute-force enumerators below are
its independent check.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from belyi.errors import InputError, ResourceLimitError

DEFAULT_CENSUS_LIMIT = 7

Perm = tuple  # tuple of ints, a bijection of range(d)


def compose(p: Perm, q: Perm) -> Perm:
    """p * q: apply p, then q."""
    return tuple(q[i] for i in p)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def cycles(p: Perm) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = p[i]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def from_cycles(d: int, text: str) -> Perm:
    """Parse 1-based cycle notation such as ``"(1 2 3)(4 5)"``; ``"()"`` is the identity."""
    images = list(range(d))
    body = text.replace(" ", ",")
    for chunk in body.split(")"):
        chunk = chunk.strip().lstrip("(").strip(",")
        if not chunk:
            continue
        pts = [int(x) - 1 for x in chunk.split(",") if x]
        if any(not 0 <= x < d for x in pts):
            raise InputError(f"cycle {chunk!r} leaves 1..{d}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    if sorted(images) != list(range(d)):
        raise InputError(f"{text!r} is not a permutation")
    return tuple(images)


def cycle_string(p: Perm) -> str:
    parts = ["(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles(p) if len(c) > 1]
    return "".join(parts) or "()"


def is_transitive(*gens: Perm) -> bool:
    d = len(gens[0])
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for g in gens:
            j = g[i]
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == d


@dataclass(frozen=True)
class PermPair:
    sigma0: Perm
    sigma1: Perm

    def __post_init__(self):
        s0, s1 = tuple(self.sigma0), tuple(self.sigma1)
        d = len(s0)
        if len(s1) != d or d == 0:
            raise ValueError("permutations must share a positive degree")
        for s in (s0, s1):
            if sorted(s) != list(range(d)):
                raise ValueError(f"{s} is not a permutation of 0..{d - 1}")
        object.__setattr__(self, "sigma0", s0)
        object.__setattr__(self, "sigma1", s1)

    @classmethod
    def from_cycles(cls, d: int, s0: str, s1: str) -> "PermPair":
        return cls(from_cycles(d, s0), from_cycles(d, s1))

    @property
    def degree(self) -> int:
        return len(self.sigma0)

    @property
    def sigma_inf(self) -> Perm:
        return inverse(compose(self.sigma0, self.sigma1))

    def is_transitive(self) -> bool:
        return is_transitive(self.sigma0, self.sigma1)

    def conjugate(self, g: Perm) -> "PermPair":
        """The pair relabelled by g: each sigma becomes g^-1 sigma g."""
        return PermPair(_relabel(self.sigma0, g), _relabel(self.sigma1, g))

    @property
    def passport(self) -> "Passport":
        return Passport(cycle_type(self.sigma0), cycle_type(self.sigma1), cycle_type(self.sigma_inf))

    def images(self) -> tuple[list[int], list[int]]:
        """1-based image lists."""
        return [i + 1 for i in self.sigma0], [i + 1 for i in self.sigma1]

    def __str__(self):
        return f"[{cycle_string(self.sigma0)}, {cycle_string(self.sigma1)}]"


def _relabel(s: Perm, g: Perm) -> Perm:
    out = [0] * len(s)
    for i, j in enumerate(s):
        out[g[i]] = g[j]
    return tuple(out)


def _is_partition(parts: Sequence[int], d: int) -> bool:
    return all(p >= 1 for p in parts) and sum(parts) == d


@dataclass(frozen=True)
class Passport:
    """Cycle types over 0, 1 and oo, each a non-increasing tuple."""

    zero: tuple
    one: tuple
    inf: tuple

    def __post_init__(self):
        for name in ("zero", "one", "inf"):
            object.__setattr__(self, name, tuple(sorted(getattr(self, name), reverse=True)))

    @property
    def degree(self) -> int:
        return sum(self.zero)

    def total_branching(self) -> int:
        d = self.degree
        return sum(d - len(part) for part in (self.zero, self.one, self.inf))

    def is_valid(self) -> bool:
        d = self.degree
        return (
            d >= 1
            and all(_is_partition(p, d) for p in (self.zero, self.one, self.inf))
            and self.total_branching() % 2 == 0
        )

    @classmethod
    def parse(cls, text: str) -> "Passport":
        """``"3/3/3"`` or ``"2/2/1,1"``: parts separated by commas, points by slashes."""
        blocks = text.split("/")
        if len(blocks) != 3:
            raise InputError(f"passport {text!r} needs three '/'-separated partitions")
        try:
            parts = [tuple(int(x) for x in b.split(",") if x.strip()) for b in blocks]
        except ValueError:
            raise InputError(f"passport {text!r} has a non-integer part") from None
        return cls(*parts)

    def __str__(self):
        return "/".join(",".join(map(str, p)) for p in (self.zero, self.one, self.inf))


@dataclass(frozen=True)
class DessinClass:
    representative: PermPair
    passport: Passport
    genus: int
    aut_order: int


# -- counting ---------------------------------------------------------------


@lru_cache(maxsize=None)
def hall_count(d: int) -> int:
    """Number of index-d subgroups of the free group of rank 2 (Hall's recursion)."""
    if d < 1:
        raise ValueError("hall_count needs d >= 1")
    return d * math.factorial(d) - sum(math.factorial(d - i) * hall_count(i) for i in range(1, d))


def _check_limit(d: int, limit: int):
    if d < 1:
        raise ValueError("degree must be at least 1")
    if d > limit:
        raise ResourceLimitError(f"degree {d} exceeds the brute-force limit {limit}")


def partitions(d: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of d as non-increasing tuples, largest first."""
    largest = d if largest is None else largest
    if d == 0:
        yield ()
        return
    for k in range(min(d, largest), 0, -1):
        for rest in partitions(d - k, k):
            yield (k,) + rest


def class_representative(shape: Sequence[int]) -> Perm:
    images = []
    start = 0
    for k in shape:
        images.extend(range(start + 1, start + k))
        images.append(start)
        start += k
    return tuple(images)


def class_size(shape: Sequence[int]) -> int:
    """Number of permutations with the given cycle type."""
    d = sum(shape)
    z = 1
    for k, mult in Counter(shape).items():
        z *= k**mult * math.factorial(mult)
    return math.factorial(d) // z


def count_transitive_pairs(d: int, limit: int = DEFAULT_CENSUS_LIMIT) -> int:
    """Ordered pairs in S_d generating a transitive group, by exhaustive search.

    sigma0 runs over one representative per cycle type, weighted by the
    class size (transitivity is invariant under simultaneous conjugation);
    sigma1 runs over all of S_d.
    """
    _check_limit(d, limit)
    all_perms = list(itertools.permutations(range(d)))
    total = 0
    for shape in partitions(d):
        s0 = class_representative(shape)
        hits = sum(1 for s1 in all_perms if is_transitive(s0, s1))
        total += class_size(shape) * hits
    return total


# -- canonical forms and automorphisms ---------------------------------------


def _traversal_form(pair: PermPair, start: int) -> tuple:
    s0, s1 = pair.sigma0, pair.sigma1
    d = len(s0)
    label = {start: 0}
    order = [start]
    for v in order:
        for w in (s0[v], s1[v]):
            if w not in label:
                label[w] = len(order)
                order.append(w)
    if len(order) != d:
        raise ValueError("pair is not transitive")
    new0 = [0] * d
    new1 = [0] * d
    for v in range(d):
        new0[label[v]] = label[s0[v]]
        new1[label[v]] = label[s1[v]]
    return tuple(new0), tuple(new1)


def conjugacy_key(pair: PermPair) -> tuple:
    """Complete invariant of a transitive pair under simultaneous conjugation."""
    return min(_traversal_form(pair, s) for s in range(pair.degree))


def least_of_type(shape: Sequence[int]) -> Perm:
    """Lexicographically least permutation with the given cycle type.

    Cycles of consecutive labels, shortest first.
    """
    return class_representative(sorted(shape))


def _conjugators(p: Perm, target: Perm) -> Iterator[Perm]:
    """Every g with p relabelled by g equal to target (same cycle type)."""
    by_len: dict[int, list] = {}
    for c in cycles(p):
        by_len.setdefault(len(c), []).append(c)
    tgt: dict[int, list] = {}
    for c in cycles(target):
        tgt.setdefault(len(c), []).append(c)
    lengths = sorted(by_len)
    choices = []
    for k in lengths:
        opts = []
        for order in itertools.permutations(by_len[k]):
            for rots in itertools.product(range(k), repeat=len(order)):
                opts.append((order, rots))
        choices.append(opts)
    d = len(p)
    for combo in itertools.product(*choices):
        g = [0] * d
        for k, (order, rots) in zip(lengths, combo):
            for src, dst, r in zip(order, tgt[k], rots):
                for i, v in enumerate(src):
                    g[v] = dst[(i + r) % k]
        yield tuple(g)


def canonical_pair(pair: PermPair) -> PermPair:
    """Lexicographically least pair in the simultaneous conjugation orbit.

    The first coordinate of the minimum is the least permutation of
    sigma0's cycle type, so only relabellings reaching it are tried.
    """
    least0 = least_of_type(cycle_type(pair.sigma0))
    best = min(_relabel(pair.sigma1, g) for g in _conjugators(pair.sigma0, least0))
    return PermPair(least0, best)


def centralizer_order(pair: PermPair) -> int:
    """|{g : g commutes with sigma0 and sigma1}| for a transitive pair.

    A centralizing element is fixed by its value at 0, so try each target.
    """
    s0, s1 = pair.sigma0, pair.sigma1
    d = len(s0)
    if not pair.is_transitive():
        raise ValueError("centralizer_order expects a transitive pair")
    count = 0
    for target in range(d):
        g = {0: target}
        stack = [0]
        ok = True
        while stack and ok:
            v = stack.pop()
            for s in (s0, s1):
                w, gw = s[v], s[g[v]]
                if w in g:
                    if g[w] != gw:
                        ok = False
                        break
                else:
                    g[w] = gw
                    stack.append(w)
        if ok and len(set(g.values())) == d:
            count += 1
    return count


def genus_of(pair: PermPair) -> int:
    """Riemann-Hurwitz: 2 - 2g = 2d - sum over 0, 1, oo of (d - #cycles)."""
    if not pair.is_transitive():
        raise ValueError("genus is defined for transitive pairs only")
    branching = pair.passport.total_branching()
    if branching % 2:
        raise ArithmeticError("odd total branching")
    return 1 - pair.degree + branching // 2


def enumerate_dessins(d: int, limit: int = DEFAULT_CENSUS_LIMIT) -> list[DessinClass]:
    """All transitive pairs of degree d up to simultaneous conjugation.

    Classes come back sorted by canonical representative.
    """
    _check_limit(d, limit)
    all_perms = list(itertools.permutations(range(d)))
    found: dict[tuple, PermPair] = {}
    for shape in partitions(d):
        s0 = class_representative(shape)
        for s1 in all_perms:
            if not is_transitive(s0, s1):
                continue
            pair = PermPair(s0, s1)
            key = conjugacy_key(pair)
            if key not in found:
                found[key] = pair
    classes = []
    for pair in found.values():
        rep = canonical_pair(pair)
        classes.append(DessinClass(rep, rep.passport, genus_of(rep), centralizer_order(rep)))
    classes.sort(key=lambda c: (c.representative.sigma0, c.representative.sigma1))
    return classes


def degree_bound(d: int, a: int) -> int:
    """(d / a) * M_d, the bound on the degree of a field of definition."""
    if d < 1 or a < 1:
        raise ValueError("d and a must be positive")
    if d % a:
        raise ValueError(f"automorphism count {a} does not divide the degree {d}")
    return d // a * hall_count(d)


def passport_bound(d: int, passport: Passport, limit: int = DEFAULT_CENSUS_LIMIT) -> int:
    """Number of degree-d classes with the given passport, by enumeration."""
    _check_limit(d, limit)
    if passport.degree != d or not passport.is_valid():
        raise ValueError(f"{passport} is not a valid degree-{d} passport")
    return sum(1 for c in enumerate_dessins(d, limit) if c.passport == passport)


def class_mass(classes: Sequence[DessinClass]) -> tuple:
    """(sum d/aut, sum d!/aut) over a census; compare with M_d and the pair count."""
    if not classes:
        return 0, 0
    d = classes[0].representative.degree
    return (
        sum(d // c.aut_order for c in classes),
        sum(math.factorial(d) // c.aut_order for c in classes),
    )
