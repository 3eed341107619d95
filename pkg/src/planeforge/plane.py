"""Projective planes: the horizontal/vertical/determinantal construction,
axiom verification, permutation extraction and the Bruck-Ryser sieve."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .errors import CanonicalFormRequired, PlaneforgeError, PreconditionError
from .field import agl1, make_field_for_order
from .group import PermSet, cosets, find_regular_normal
from .perm import Permutation
from .sharp import check_sharp2t

__all__ = [
    "Plane",
    "AxiomReport",
    "horizontal_lines",
    "vertical_lines",
    "base_lines",
    "determinantal_line",
    "determinantal_lines",
    "coset_blocks",
    "build_plane",
    "verify_plane",
    "extract_permutations",
    "extract_blocks",
    "bruck_ryser_excluded",
    "squarefree_part",
]

Line = tuple[int, ...]


@dataclass(frozen=True)
class Plane:
    order: int
    lines: tuple[Line, ...]

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(tuple(sorted(l)) for l in self.lines))

    @property
    def num_points(self) -> int:
        n = self.order
        return n * n + n + 1

    def line_set(self) -> frozenset[Line]:
        return frozenset(self.lines)

    def __str__(self) -> str:
        return "\n".join(" ".join(map(str, l)) for l in self.lines)


@dataclass
class AxiomReport:
    order: int
    num_points: int
    num_lines: int
    axioms: dict[str, bool]
    witnesses: dict[str, list] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        n = self.order
        v = n * n + n + 1
        return self.num_lines == v and all(self.axioms.values())

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "num_points": self.num_points,
            "num_lines": self.num_lines,
            "passed": self.passed,
            "axioms": dict(self.axioms),
            "witnesses": {k: [list(w) if isinstance(w, tuple) else w for w in ws] for k, ws in self.witnesses.items()},
        }


def horizontal_lines(n: int) -> list[Line]:
    rows = [tuple(range(1, n + 2))]
    for i in range(2, n + 2):
        rows.append((1,) + tuple(range((i - 1) * n + 2, i * n + 2)))
    return rows


def vertical_lines(n: int) -> list[Line]:
    # every vertical line passes through point 2
    return [(2,) + tuple(k * n + 1 + j for k in range(1, n + 1)) for j in range(1, n + 1)]


def base_lines(n: int) -> list[Line]:
    if n < 2:
        raise PlaneforgeError("plane order must be at least 2")
    return horizontal_lines(n) + vertical_lines(n)


def determinantal_line(sigma: Permutation, leading: int) -> Line:
    n = sigma.degree
    return (leading,) + tuple(i * n + 1 + sigma(i) for i in range(1, n + 1))


def determinantal_lines(blocks: Sequence[Sequence[Permutation]]) -> list[Line]:
    """Block ``m`` (1-based) supplies the lines with leading point ``m + 2``."""
    if not blocks or not blocks[0]:
        raise PlaneforgeError("no blocks given")
    n = blocks[0][0].degree
    if len(blocks) != n - 1:
        raise PlaneforgeError(f"expected {n - 1} blocks, got {len(blocks)}")
    return [determinantal_line(s, m + 2) for m, block in enumerate(blocks, 1) for s in block]


def coset_blocks(s: PermSet) -> list[list[Permutation]]:
    """Group a sharply 2-transitive group into cosets of its regular normal
    subgroup, in the canonical block order."""
    if not check_sharp2t(s).s1_pass:
        raise PreconditionError("set is not sharply 2-transitive")
    normal = find_regular_normal(s)
    if normal is None:
        raise PreconditionError("set is not a group with a regular normal subgroup")
    return cosets(s, normal)


def build_plane(n: int) -> Plane:
    spec = make_field_for_order(n)
    group = agl1(spec).elements
    lines = base_lines(n) + determinantal_lines(coset_blocks(group))
    return Plane(n, tuple(lines))


def verify_plane(p: Plane) -> AxiomReport:
    """Check the four incidence axioms plus the point/line counts."""
    n = p.order
    v = n * n + n + 1
    lines = p.lines
    w: dict[str, list] = {"i": [], "ii": [], "iii": [], "iv": [], "range": []}
    masks = []
    for idx, line in enumerate(lines):
        m = 0
        for pt in line:
            if not 1 <= pt <= v:
                w["range"].append((idx, pt))
            else:
                m |= 1 << pt
        masks.append(m)
        if len(set(line)) != n + 1:
            w["i"].append((idx, len(set(line))))
    on = Counter(pt for line in lines for pt in set(line) if 1 <= pt <= v)
    for pt in range(1, v + 1):
        if on.get(pt, 0) != n + 1:
            w["ii"].append((pt, on.get(pt, 0)))
    for a, b in combinations(range(len(masks)), 2):
        k = (masks[a] & masks[b]).bit_count()
        if k != 1:
            w["iii"].append((a, b, k))
    pair_count = Counter()
    for line in lines:
        pair_count.update(combinations(sorted(set(x for x in line if 1 <= x <= v)), 2))
    for pair in combinations(range(1, v + 1), 2):
        c = pair_count.get(pair, 0)
        if c != 1:
            w["iv"].append((pair[0], pair[1], c))
    axioms = {
        "i": not w["i"] and not w["range"],
        "ii": not w["ii"],
        "iii": not w["iii"],
        "iv": not w["iv"],
    }
    w = {k: ws[:20] for k, ws in w.items() if ws}
    return AxiomReport(n, v, len(lines), axioms, w)


def extract_blocks(p: Plane) -> list[list[Permutation]]:
    """Recover the permutation behind each determinantal line, grouped by
    leading point (block ``m`` holds leading point ``m + 2``)."""
    n = p.order
    base = base_lines(n)
    present = p.line_set()
    if not set(base) <= present:
        raise CanonicalFormRequired("plane does not contain the canonical horizontal and vertical lines")
    rest = [l for l in p.lines if l not in set(base)]
    blocks: list[list[Permutation]] = [[] for _ in range(n - 1)]
    for line in rest:
        lead = line[0]
        if not 3 <= lead <= n + 1:
            raise CanonicalFormRequired(f"line {line} has leading point outside 3..{n + 1}")
        images = []
        for i in range(1, n + 1):
            band = [x for x in line if i * n + 2 <= x <= i * n + n + 1]
            if len(band) != 1:
                raise CanonicalFormRequired(f"line {line} meets row {i} of the sub-table {len(band)} times")
            images.append(band[0] - i * n - 1)
        blocks[lead - 3].append(Permutation(images))
    return blocks


def extract_permutations(p: Plane) -> PermSet:
    blocks = extract_blocks(p)
    return PermSet([s for b in blocks for s in b], p.order)


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def squarefree_part(n: int) -> int:
    r = 1
    for prime, e in _factor(n).items():
        if e % 2:
            r *= prime
    return r


def bruck_ryser_excluded(n: int) -> bool:
    """True iff n = 1 or 2 (mod 4) and the square-free part of n has a prime
    factor of the form 4k + 3."""
    if n < 2:
        raise PlaneforgeError("order must be at least 2")
    if n > 10**6:
        raise PlaneforgeError("sieve bound is 10**6")
    if n % 4 not in (1, 2):
        return False
    return any(prime % 4 == 3 for prime in _factor(squarefree_part(n)))
