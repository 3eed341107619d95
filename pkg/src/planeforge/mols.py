"""Latin squares, orthogonality and complete MOLS sets from sharply
2-transitive groups."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import PlaneforgeError, PreconditionError
from .group import PermSet, cosets, is_regular_normal
from .perm import Permutation, identity, is_fixed_point_free
from .sharp import check_observations, check_sharp2t

__all__ = [
    "LatinSquare",
    "MolsSet",
    "latin_violations",
    "is_latin",
    "are_orthogonal",
    "fundamental_ols",
    "mols_from_group",
    "square_from_rows",
]

Grid = tuple[tuple[int, ...], ...]


class RangeError(PlaneforgeError, ValueError):
    """Grid value outside 1..n, or a non-square grid."""


class NotLatin(PlaneforgeError, ValueError):
    pass


def _as_grid(grid) -> Grid:
    g = tuple(tuple(int(v) for v in row) for row in grid)
    n = len(g)
    if n == 0 or any(len(r) != n for r in g):
        raise RangeError("grid is not square")
    for r, row in enumerate(g, 1):
        for c, v in enumerate(row, 1):
            if not 1 <= v <= n:
                raise RangeError(f"value {v} at ({r},{c}) outside 1..{n}")
    return g


def latin_violations(grid) -> list[str]:
    g = _as_grid(grid)
    n = len(g)
    out = []
    for r, row in enumerate(g, 1):
        if len(set(row)) != n:
            out.append(f"row {r} repeats a symbol")
    for c in range(n):
        if len({g[r][c] for r in range(n)}) != n:
            out.append(f"column {c + 1} repeats a symbol")
    return out


def is_latin(grid) -> bool:
    return not latin_violations(grid)


@dataclass(frozen=True)
class LatinSquare:
    grid: Grid

    def __post_init__(self):
        g = _as_grid(self.grid)
        bad = latin_violations(g)
        if bad:
            raise NotLatin("not a Latin square: " + "; ".join(bad))
        object.__setattr__(self, "grid", g)

    @property
    def order(self) -> int:
        return len(self.grid)

    def __str__(self) -> str:
        return "\n".join(" ".join(map(str, r)) for r in self.grid)

    def __getitem__(self, rc):
        r, c = rc
        return self.grid[r][c]


@dataclass(frozen=True)
class MolsSet:
    order: int
    squares: tuple[LatinSquare, ...]
    fundamental_index: int | None = 0

    def __post_init__(self):
        object.__setattr__(self, "squares", tuple(self.squares))
        for sq in self.squares:
            if sq.order != self.order:
                raise PlaneforgeError("square of the wrong order in MOLS set")

    def __len__(self) -> int:
        return len(self.squares)

    def __iter__(self):
        return iter(self.squares)

    def non_orthogonal_pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a, b in combinations(range(len(self.squares)), 2)
                if not are_orthogonal(self.squares[a], self.squares[b])]

    @property
    def is_mutually_orthogonal(self) -> bool:
        return not self.non_orthogonal_pairs()

    @property
    def is_complete(self) -> bool:
        return len(self.squares) == self.order - 1 and self.is_mutually_orthogonal


def are_orthogonal(a, b) -> bool:
    """All n^2 superposed pairs ``(a[i][j], b[i][j])`` are distinct."""
    ga = a.grid if isinstance(a, LatinSquare) else _as_grid(a)
    gb = b.grid if isinstance(b, LatinSquare) else _as_grid(b)
    if len(ga) != len(gb):
        raise PlaneforgeError(f"order mismatch: {len(ga)} vs {len(gb)}")
    pairs = {(x, y) for ra, rb in zip(ga, gb) for x, y in zip(ra, rb)}
    return len(pairs) == len(ga) ** 2


def square_from_rows(rows: Sequence[Permutation]) -> LatinSquare:
    """Stack transformed rows sorted by first symbol."""
    return LatinSquare(tuple(p.images for p in sorted(rows, key=lambda p: p.images[0])))


def fundamental_ols(g: PermSet, n: PermSet) -> LatinSquare:
    if not is_regular_normal(g, n):
        raise PreconditionError("fundamental OLS needs a regular normal subgroup")
    return square_from_rows(n.elements)


def mols_from_group(g: PermSet) -> MolsSet:
    """One square per coset of the regular normal subgroup, fundamental first."""
    report = check_sharp2t(g)
    if not report.s1_pass:
        raise PreconditionError("group is not sharply 2-transitive")
    report = check_observations(g, report)
    failed = [o.name for o in report.observation_results if not o.passed]
    if failed:
        raise PreconditionError("observation(s) failed: " + ", ".join(failed))
    e = identity(g.degree)
    normal = PermSet([e] + sorted(p for p in g.elements if is_fixed_point_free(p)), g.degree)
    if not is_regular_normal(g, normal):
        raise PreconditionError("fixed-point-free elements do not form a regular normal subgroup")
    blocks = cosets(g, normal)
    return MolsSet(g.degree, tuple(square_from_rows(b) for b in blocks), 0)
