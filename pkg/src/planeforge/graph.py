"""Graph views of a plane: clique packings of K_V and pair-group cycle covers."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .group import PermSet
from .perm import Permutation, to_cycles
from .plane import Plane

__all__ = [
    "Packing",
    "CycleCover",
    "plane_to_packing",
    "pair_index",
    "pair_group",
    "cycle_cover",
]


@dataclass(frozen=True)
class Packing:
    num_vertices: int
    blocks: tuple[tuple[int, tuple[int, ...]], ...]  # (color, vertex set)
    tight: bool
    repeated_edges: tuple[tuple[int, int], ...]
    missing_edges: tuple[tuple[int, int], ...]

    @property
    def colors_distinct(self) -> bool:
        return len({c for c, _ in self.blocks}) == len(self.blocks)

    @property
    def edges_covered(self) -> int:
        return sum(len(b) * (len(b) - 1) // 2 for _, b in self.blocks)


def plane_to_packing(p: Plane) -> Packing:
    """One monochromatic clique per line, color = line index (1-based)."""
    v = p.num_points
    blocks = tuple((i, tuple(line)) for i, line in enumerate(p.lines, 1))
    cover = Counter()
    for _, b in blocks:
        cover.update(combinations(sorted(b), 2))
    repeated = tuple(e for e, c in sorted(cover.items()) if c > 1)
    missing = tuple(e for e in combinations(range(1, v + 1), 2) if e not in cover)
    tight = not repeated and not missing
    return Packing(v, blocks, tight, repeated, missing)


def pair_index(n: int) -> dict[tuple[int, int], int]:
    """Ordered pairs (i, j), i != j, numbered lexicographically from 1."""
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    return {pr: k for k, pr in enumerate(pairs, 1)}


def pair_group(g: PermSet) -> PermSet:
    """Induced action on ordered pairs: (i, j) -> (s(i), s(j))."""
    n = g.degree
    idx = pair_index(n)
    pairs = list(idx)
    out = []
    for s in g.elements:
        out.append(Permutation._trusted(tuple(idx[(s(i), s(j))] for i, j in pairs)))
    return PermSet(out, n * (n - 1))


@dataclass(frozen=True)
class CycleCover:
    num_vertices: int
    cycles: tuple[tuple[tuple[int, ...], ...], ...]  # per element, cycles of length >= 2
    complete: bool
    arc_multiplicity: dict

    @property
    def arcs_covered(self) -> int:
        return sum(self.arc_multiplicity.values())

    def cycle_length_multisets(self) -> list[tuple[int, ...]]:
        return [tuple(sorted(len(c) for c in cs)) for cs in self.cycles]


def cycle_cover(pg: PermSet) -> CycleCover:
    m = pg.degree
    per_element = []
    arcs = Counter()
    for s in pg.elements:
        cs = to_cycles(s).nontrivial()
        per_element.append(cs)
        for c in cs:
            for k in range(len(c)):
                arcs[(c[k], c[(k + 1) % len(c)])] += 1
    complete = m >= 2 and len(arcs) == m * (m - 1) and all(v == 1 for v in arcs.values())
    return CycleCover(m, tuple(per_element), complete, dict(arcs))
