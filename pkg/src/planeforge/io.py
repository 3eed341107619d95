"""Text file formats: ``permset n m``, ``plane n`` and ``mols n k``.

All symbols are 1-based, space-separated integers, one row per line.  Lines
starting with ``#`` are comments.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError, PermutationError
from .group import PermSet
from .mols import LatinSquare, MolsSet, RangeError, _as_grid
from .perm import parse_permutation
from .plane import Plane

__all__ = [
    "parse_permset",
    "format_permset",
    "parse_plane",
    "format_plane",
    "read_grids",
    "parse_mols",
    "format_mols",
    "read_text",
]


def read_text(source) -> str:
    """A :class:`~pathlib.Path` is read from disk; a ``str`` is file content."""
    if isinstance(source, Path):
        return source.read_text()
    return source


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        yield no, s


def _header(lines, keyword, nargs):
    for no, s in lines:
        if not s:
            continue
        parts = s.split()
        if parts[0] != keyword or len(parts) != nargs + 1:
            raise ParseError(f"expected header '{keyword}' with {nargs} integer(s), got {s!r}", no)
        try:
            vals = [int(x) for x in parts[1:]]
        except ValueError:
            raise ParseError(f"non-integer in header {s!r}", no) from None
        if any(v < 1 for v in vals):
            raise ParseError("header values must be positive", no)
        return vals
    raise ParseError(f"missing '{keyword}' header")


def _ints(s, no):
    try:
        return [int(x) for x in s.split()]
    except ValueError:
        raise ParseError(f"non-integer token in {s!r}", no) from None


def parse_permset(source) -> PermSet:
    lines = _lines(read_text(source))
    n, m = _header(lines, "permset", 2)
    perms = []
    for no, s in lines:
        if not s:
            continue
        try:
            p = parse_permutation(s, n)
        except (PermutationError, ValueError) as exc:
            raise ParseError(str(exc), no) from None
        perms.append(p)
    if len(perms) != m:
        raise ParseError(f"header promises {m} permutations, found {len(perms)}")
    if len(set(perms)) != m:
        raise ParseError("duplicate permutations")
    return PermSet(perms, n)


def format_permset(s: PermSet) -> str:
    out = [f"permset {s.degree} {len(s)}"]
    out += [p.row() for p in s.elements]
    return "\n".join(out) + "\n"


def parse_plane(source) -> Plane:
    """Parse a plane file.  Point range and integer syntax are enforced here;
    line count and line sizes are left to :func:`verify_plane`."""
    lines = _lines(read_text(source))
    (n,) = _header(lines, "plane", 1)
    if n < 2:
        raise ParseError("plane order must be at least 2")
    v = n * n + n + 1
    rows = []
    for no, s in lines:
        if not s:
            continue
        pts = _ints(s, no)
        bad = [x for x in pts if not 1 <= x <= v]
        if bad:
            raise ParseError(f"point {bad[0]} outside 1..{v}", no)
        rows.append(tuple(pts))
    return Plane(n, tuple(rows))


def format_plane(p: Plane) -> str:
    return f"plane {p.order}\n" + "".join(" ".join(map(str, l)) + "\n" for l in p.lines)


def read_grids(source) -> tuple[int, list[tuple[tuple[int, ...], ...]]]:
    """Raw grids of a MOLS file, range-checked but not required to be Latin."""
    lines = _lines(read_text(source))
    n, k = _header(lines, "mols", 2)
    grids, cur = [], []
    for no, s in lines:
        if not s:
            if cur:
                grids.append(cur)
                cur = []
            continue
        row = _ints(s, no)
        if len(row) != n:
            raise ParseError(f"row has {len(row)} entries, expected {n}", no)
        cur.append(tuple(row))
        if len(cur) > n:
            raise ParseError(f"block has more than {n} rows", no)
    if cur:
        grids.append(cur)
    if len(grids) != k:
        raise ParseError(f"header promises {k} squares, found {len(grids)}")
    out = []
    for g in grids:
        if len(g) != n:
            raise ParseError(f"block has {len(g)} rows, expected {n}")
        try:
            out.append(_as_grid(g))
        except RangeError as exc:
            raise ParseError(str(exc)) from None
    return n, out


def parse_mols(source) -> MolsSet:
    n, grids = read_grids(source)
    try:
        squares = tuple(LatinSquare(g) for g in grids)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return MolsSet(n, squares, None)


def format_mols(m: MolsSet) -> str:
    blocks = [str(sq) for sq in m.squares]
    return f"mols {m.order} {len(m.squares)}\n" + "\n\n".join(blocks) + "\n"
