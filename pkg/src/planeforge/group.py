"""Permutation sets: closure, group and coset structure, regular normal subgroups."""

from __future__ import annotations

from functools import cached_property
from math import factorial
from typing import Iterable, Sequence

from .errors import LimitExceeded, NotASubgroup, PermutationError
from .perm import Permutation, compose, identity, inverse, is_fixed_point_free

__all__ = [
    "PermSet",
    "Subgroup",
    "closure",
    "is_group",
    "is_transitive",
    "cosets",
    "is_normal",
    "is_regular",
    "is_regular_normal",
    "find_regular_normal",
    "symmetric_group",
    "alternating_group",
]


class PermSet(Sequence[Permutation]):
    """An ordered collection of distinct permutations of one degree.

    Not necessarily a group; the ``contains_identity``, ``is_group`` and
    ``is_transitive`` flags are computed on first access and cached.
    """

    def __init__(self, elements: Iterable[Permutation], degree: int | None = None):
        elements = tuple(elements)
        if degree is None:
            if not elements:
                raise PermutationError("degree is required for an empty set")
            degree = elements[0].degree
        for p in elements:
            if p.degree != degree:
                raise PermutationError(f"element of degree {p.degree} in a set of degree {degree}")
        if len(set(elements)) != len(elements):
            raise PermutationError("permutation set contains duplicates")
        self.degree = degree
        self.elements = elements

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "PermSet":
        return cls(Permutation(r) for r in rows)

    def __getitem__(self, i):
        return self.elements[i]

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p) -> bool:
        return p in self.element_set

    def __eq__(self, other) -> bool:
        if isinstance(other, PermSet):
            return self.degree == other.degree and self.elements == other.elements
        return NotImplemented

    def __hash__(self):
        return hash((self.degree, self.elements))

    def __repr__(self) -> str:
        return f"PermSet(degree={self.degree}, size={len(self)})"

    @property
    def size(self) -> int:
        return len(self.elements)

    @cached_property
    def element_set(self) -> frozenset[Permutation]:
        return frozenset(self.elements)

    def same_elements(self, other: Iterable[Permutation]) -> bool:
        return self.element_set == frozenset(other)

    def sorted(self) -> "PermSet":
        return PermSet(sorted(self.elements), self.degree)

    def rows(self) -> list[tuple[int, ...]]:
        return [p.images for p in self.elements]

    @cached_property
    def contains_identity(self) -> bool:
        return identity(self.degree) in self.element_set

    @cached_property
    def is_group(self) -> bool:
        return is_group(self)

    @cached_property
    def is_transitive(self) -> bool:
        return is_transitive(self)


class Subgroup(PermSet):
    """A subset of a parent group that is itself a group."""

    def __init__(self, parent: PermSet, elements: Iterable[Permutation]):
        super().__init__(elements, parent.degree)
        if not self.element_set <= parent.element_set:
            raise NotASubgroup("subgroup elements are not all in the parent")
        if not is_group(self):
            raise NotASubgroup("subset is not closed under composition")
        self.parent = parent


def closure(seed: Iterable[Permutation], limit: int | None = None) -> PermSet:
    """Smallest group containing ``seed``, elements sorted by transformed row.

    Raises :class:`LimitExceeded` once more than ``limit`` elements have been
    generated (default ``10 * n!``).
    """
    seed = list(seed)
    if not seed:
        raise PermutationError("closure of an empty seed")
    n = seed[0].degree
    if limit is None:
        limit = 10 * factorial(n)
    gens = list(dict.fromkeys(p.images for p in seed))
    for g in gens:
        if len(g) != n:
            raise PermutationError("seed elements have different degrees")
    e = tuple(range(1, n + 1))
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[j - 1] for j in x)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > limit:
                        raise LimitExceeded(limit)
                    nxt.append(y)
        frontier = nxt
    return PermSet((Permutation._trusted(r) for r in sorted(seen)), n)


def is_group(s: PermSet) -> bool:
    """Closed under composition and contains identity (finite, so inverses follow)."""
    if not s.elements:
        return False
    if identity(s.degree) not in s.element_set:
        return False
    rows = {p.images for p in s.elements}
    for p in rows:
        for q in rows:
            if tuple(p[j - 1] for j in q) not in rows:
                return False
    return True


def is_transitive(s: PermSet) -> bool:
    """True iff every symbol reaches every other symbol under some element."""
    n = s.degree
    for i in range(1, n + 1):
        reached = {p(i) for p in s.elements}
        if len(reached) != n:
            return False
    return True


def cosets(g: PermSet, n: PermSet) -> list[list[Permutation]]:
    """Left cosets ``x·N`` of ``n`` in ``g``.

    The block containing identity comes first; the others are sorted by their
    lexicographically least transformed row.  Elements inside a block are
    sorted by transformed row.
    """
    if not g.is_group:
        raise NotASubgroup("cosets requires the ambient set to be a group")
    if not (n.element_set <= g.element_set and is_group(n)):
        raise NotASubgroup("second argument is not a subgroup of the first")
    remaining = set(g.elements)
    blocks = []
    for x in sorted(g.elements):
        if x not in remaining:
            continue
        block = sorted(compose(x, h) for h in n.elements)
        remaining.difference_update(block)
        blocks.append(block)
    e = identity(g.degree)
    head = [b for b in blocks if e in b]
    rest = sorted((b for b in blocks if e not in b), key=lambda b: b[0].images)
    return head + rest


def is_normal(g: PermSet, n: PermSet) -> bool:
    nset = n.element_set
    for x in g.elements:
        xi = inverse(x)
        for h in n.elements:
            if compose(compose(x, h), xi) not in nset:
                return False
    return True


def is_regular(n: PermSet) -> bool:
    """Sharply transitive: transitive with exactly ``degree`` elements."""
    return len(n) == n.degree and is_transitive(n)


def is_regular_normal(g: PermSet, n: PermSet) -> bool:
    if not (n.element_set <= g.element_set and is_group(n)):
        return False
    return is_regular(n) and is_normal(g, n)


def find_regular_normal(g: PermSet) -> Subgroup | None:
    """The fixed-point-free elements plus identity, if they form a regular
    normal subgroup of ``g``; otherwise ``None``."""
    if not g.is_group:
        return None
    e = identity(g.degree)
    members = [e] + sorted(p for p in g.elements if is_fixed_point_free(p))
    cand = PermSet(members, g.degree)
    if not is_group(cand) or not is_regular_normal(g, cand):
        return None
    return Subgroup(g, cand.elements)


def symmetric_group(n: int) -> PermSet:
    from itertools import permutations

    return PermSet((Permutation._trusted(r) for r in permutations(range(1, n + 1))), n)


def _parity(p: Permutation) -> int:
    from .perm import to_cycles

    return sum(len(c) - 1 for c in to_cycles(p).cycles) % 2


def alternating_group(n: int) -> PermSet:
    return PermSet((p for p in symmetric_group(n) if _parity(p) == 0), n)


def odd_permutations(n: int) -> PermSet:
    return PermSet((p for p in symmetric_group(n) if _parity(p) == 1), n)
