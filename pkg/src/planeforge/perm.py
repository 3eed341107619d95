"""Permutations of {1..n} stored as their one-line image row.

Composition is right-to-left: ``compose(p, q)(i) == p(q(i))``.  Symbols are
1-based throughout.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import PermutationError

__all__ = [
    "Permutation",
    "CycleForm",
    "identity",
    "compose",
    "inverse",
    "product",
    "power",
    "order",
    "to_cycles",
    "from_cycles",
    "fixed_points",
    "is_fixed_point_free",
    "agreement",
    "parse_permutation",
]


@dataclass(frozen=True, slots=True)
class Permutation:
    """A bijection of {1..n}; ``images[i-1]`` is the image of symbol ``i``."""

    images: tuple[int, ...]

    def __init__(self, images: Iterable[int]):
        images = tuple(int(v) for v in images)
        n = len(images)
        if n < 1:
            raise PermutationError("degree must be at least 1")
        if sorted(images) != list(range(1, n + 1)):
            raise PermutationError(f"not a bijection of 1..{n}: {' '.join(map(str, images))}")
        object.__setattr__(self, "images", images)

    @classmethod
    def _trusted(cls, images: tuple[int, ...]) -> "Permutation":
        # Skips the bijection check; callers guarantee validity.
        obj = object.__new__(cls)
        object.__setattr__(obj, "images", images)
        return obj

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __len__(self) -> int:
        return len(self.images)

    def __iter__(self):
        return iter(self.images)

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def row(self) -> str:
        """The transformed row as space-separated text."""
        return " ".join(map(str, self.images))

    def cycle_str(self) -> str:
        return str(to_cycles(self))

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_str()})"

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, 1))


@dataclass(frozen=True, slots=True)
class CycleForm:
    """Canonical disjoint-cycle form: each cycle starts at its minimum, cycles
    sorted by first element, fixed points kept as 1-cycles."""

    degree: int
    cycles: tuple[tuple[int, ...], ...]

    def __str__(self) -> str:
        if self.degree >= 10:
            return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles)
        return "".join("(" + "".join(map(str, c)) + ")" for c in self.cycles)

    def nontrivial(self) -> tuple[tuple[int, ...], ...]:
        return tuple(c for c in self.cycles if len(c) > 1)


def identity(n: int) -> Permutation:
    return Permutation._trusted(tuple(range(1, n + 1)))


def _check_degrees(p: Permutation, q: Permutation) -> None:
    if p.degree != q.degree:
        raise PermutationError(f"degree mismatch: {p.degree} vs {q.degree}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p∘q`` (apply ``q`` first, then ``p``)."""
    _check_degrees(p, q)
    pi = p.images
    return Permutation._trusted(tuple(pi[j - 1] for j in q.images))


def product(*perms: Permutation) -> Permutation:
    """Evaluate a group word read left to right: the first factor acts first.

    ``product(a, b, c)`` equals ``compose(c, compose(b, a))``.  This is the
    usual reading of words such as ``t^-1 s t`` in permutation group texts.
    """
    if not perms:
        raise PermutationError("empty product")
    result = perms[0]
    for p in perms[1:]:
        result = compose(p, result)
    return result


def inverse(p: Permutation) -> Permutation:
    out = [0] * p.degree
    for i, v in enumerate(p.images, 1):
        out[v - 1] = i
    return Permutation._trusted(tuple(out))


def power(p: Permutation, k: int) -> Permutation:
    if k < 0:
        return power(inverse(p), -k)
    result = identity(p.degree)
    base = p
    while k:
        if k & 1:
            result = compose(base, result)
        base = compose(base, base)
        k >>= 1
    return result


def order(p: Permutation) -> int:
    from math import lcm

    return lcm(*(len(c) for c in to_cycles(p).cycles))


def to_cycles(p: Permutation) -> CycleForm:
    n = p.degree
    seen = [False] * (n + 1)
    cycles = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        j = p.images[start - 1]
        while j != start:
            cycle.append(j)
            seen[j] = True
            j = p.images[j - 1]
        cycles.append(tuple(cycle))
    return CycleForm(n, tuple(cycles))


def from_cycles(c: CycleForm | Sequence[Sequence[int]], degree: int | None = None) -> Permutation:
    """Build a permutation from disjoint cycles.

    Accepts a :class:`CycleForm` or a plain list of cycles plus ``degree``.
    Omitted symbols are fixed when a plain list is given; a ``CycleForm`` must
    partition {1..n} exactly.
    """
    if isinstance(c, CycleForm):
        n, cycles, strict = c.degree, c.cycles, True
    else:
        if degree is None:
            raise PermutationError("degree is required for a bare cycle list")
        n, cycles, strict = degree, c, False
    images = list(range(1, n + 1))
    used = set()
    for cycle in cycles:
        for k, a in enumerate(cycle):
            if not 1 <= a <= n:
                raise PermutationError(f"symbol {a} outside 1..{n}")
            if a in used:
                raise PermutationError(f"symbol {a} appears in two cycles")
            used.add(a)
            images[a - 1] = cycle[(k + 1) % len(cycle)]
    if strict and len(used) != n:
        missing = sorted(set(range(1, n + 1)) - used)
        raise PermutationError(f"cycles do not cover symbols {missing}")
    return Permutation._trusted(tuple(images))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int | None = None) -> Permutation:
    """Parse a transformed row ``"2 1 4 3"`` or a cycle string ``"(12)(34)"``.

    Below degree 10 an unseparated cycle body reads one digit per symbol;
    from degree 10 on, symbols inside a cycle must be separated by spaces.
    """
    text = text.strip()
    if not text.startswith("("):
        p = Permutation(int(tok) for tok in text.split())
        if degree is not None and p.degree != degree:
            raise PermutationError(f"expected degree {degree}, got {p.degree}")
        return p
    if degree is None:
        raise PermutationError("degree is required to parse cycle form")
    if _CYCLE_RE.sub("", text).strip():
        raise PermutationError(f"malformed cycle string {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        body = body.strip()
        if not body:
            continue
        if " " in body or "," in body:
            cycles.append([int(t) for t in re.split(r"[ ,]+", body)])
        elif degree < 10:
            cycles.append([int(ch) for ch in body])
        else:
            # from degree 10 on, an unseparated body is one symbol
            cycles.append([int(body)])
    return from_cycles(cycles, degree)


def fixed_points(p: Permutation) -> set[int]:
    return {i for i, v in enumerate(p.images, 1) if v == i}


def is_fixed_point_free(p: Permutation) -> bool:
    return all(v != i for i, v in enumerate(p.images, 1))


def agreement(p: Permutation, q: Permutation) -> int:
    """Number of symbols on which ``p`` and ``q`` agree."""
    _check_degrees(p, q)
    return sum(a == b for a, b in zip(p.images, q.images))
