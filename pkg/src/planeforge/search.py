"""Exhaustive backtracking searches at small orders.

Three targets: identity-containing sharply 2-transitive sets in S_n,
orthogonal pairs of Latin squares, and transitive subgroups of S_n of a given
order.  Each search splits its tree into top-level branches which may be run
on a process pool; results are merged in branch order so the outcome does not
depend on the number of workers.  ``max_nodes`` is a budget per top-level
branch (per level for the subgroup search), which keeps node counts
reproducible even when the guard fires.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from math import factorial
from typing import Any, Callable

from .errors import PlaneforgeError
from .group import PermSet, find_regular_normal, is_transitive
from .mols import LatinSquare
from .perm import Permutation
from .sharp import check_sharp2t

__all__ = [
    "SearchOutcome",
    "search_sharp2t_sets",
    "search_mols_pair",
    "search_transitive_subgroups",
    "reduced_latin_squares",
    "transversals",
    "orthogonal_mates",
]


@dataclass
class SearchOutcome:
    target: str
    found: list[Any] = field(default_factory=list)
    exhausted: bool = False
    nodes_visited: int = 0
    elapsed: float = 0.0
    guard_hit: str | None = None
    details: list[dict] = field(default_factory=list)

    @property
    def nonexistence_certified(self) -> bool:
        return self.exhausted and not self.found

    @property
    def exit_code(self) -> int:
        if self.found:
            return 0
        return 1 if self.exhausted else 3


class _Budget:
    def __init__(self, max_nodes, deadline):
        self.max_nodes = max_nodes
        self.deadline = deadline
        self.nodes = 0
        self.hit: str | None = None

    def tick(self) -> bool:
        """Count one node; False once a guard has fired."""
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            self.hit = "nodes"
            return False
        if self.deadline is not None and not (self.nodes & 1023) and time.monotonic() > self.deadline:
            self.hit = "time"
            return False
        return True


def _run_branches(worker: Callable, init: Callable, init_args: tuple, branches: list, workers: int):
    if workers <= 1 or len(branches) <= 1:
        init(*init_args)
        for b in branches:
            yield worker(b)
        return
    with ProcessPoolExecutor(max_workers=workers, initializer=init, initargs=init_args) as pool:
        yield from pool.map(worker, branches)


def _merge(outcome: SearchOutcome, results, max_found):
    """Fold branch results in order; stop counting once ``max_found`` is met."""
    complete = True
    for found, nodes, hit in results:
        outcome.nodes_visited += nodes
        outcome.found.extend(found)
        if hit:
            complete = False
            outcome.guard_hit = outcome.guard_hit or hit
        if max_found is not None and len(outcome.found) >= max_found:
            del outcome.found[max_found:]
            # later branches unexplored
            return False
    return complete


# ---------------------------------------------------------------- sharp sets

_S: dict = {}


def _sharp_init(n, max_found, max_nodes, deadline):
    perms = list(permutations(range(n)))
    N = len(perms)
    npairs = n * n
    by_req = [0] * npairs
    for k, p in enumerate(perms):
        by_req[p[0] * n + p[1]] |= 1 << k
    # compat[k]: elements agreeing with perms[k] in at most one place
    compat = []
    for a in perms:
        m = 0
        for k, b in enumerate(perms):
            agree = 0
            for x, y in zip(a, b):
                if x == y:
                    agree += 1
                    if agree > 1:
                        break
            if agree <= 1:
                m |= 1 << k
        compat.append(m)
    reqs = [i * n + j for i in range(n) for j in range(n) if i != j]
    _S.update(n=n, perms=perms, by_req=by_req, compat=compat, reqs=reqs,
              max_found=max_found, max_nodes=max_nodes, deadline=deadline, N=N)


def _sharp_branch(first: int):
    n, perms, by_req, compat = _S["n"], _S["perms"], _S["by_req"], _S["compat"]
    max_found = _S["max_found"]
    budget = _Budget(_S["max_nodes"], _S["deadline"])
    target = n * (n - 1)
    found: list[list[int]] = []
    chosen = [0, first]
    req0 = 0 * n + 1
    req1 = perms[first][0] * n + perms[first][1]
    open_reqs = [r for r in _S["reqs"] if r not in (req0, req1)]
    mask0 = compat[0] & compat[first]

    def rec(mask, open_reqs):
        if not budget.tick():
            return False
        if len(chosen) == target:
            found.append(list(chosen))
            return max_found is None or len(found) < max_found
        best, best_c, best_r = None, None, None
        for r in open_reqs:
            c = mask & by_req[r]
            if not c:
                return True
            k = c.bit_count()
            if best is None or k < best:
                best, best_c, best_r = k, c, r
                if k == 1:
                    break
        rest = [r for r in open_reqs if r != best_r]
        c = best_c
        while c:
            low = c & -c
            k = low.bit_length() - 1
            c ^= low
            chosen.append(k)
            ok = rec(mask & compat[k], rest)
            chosen.pop()
            if not ok:
                return False
        return True

    rec(mask0, open_reqs)
    return [[perms[k] for k in w] for w in found], budget.nodes, budget.hit


def search_sharp2t_sets(n: int, max_found: int | None = None, *, max_nodes: int | None = None,
                        time_limit: float | None = None, workers: int = 1, max_degree: int = 6) -> SearchOutcome:
    """All sharply 2-transitive subsets of S_n that contain the identity.

    Any sharply 2-transitive set is a left translate of one of these.  The
    search covers the value pairs of columns (1, 2) one at a time, always
    branching on the pair with the fewest compatible candidates, and keeps
    only candidates agreeing with every chosen element in at most one place.
    """
    if not 2 <= n <= max_degree:
        raise PlaneforgeError(f"sharp set search supports 2 <= n <= {max_degree}")
    start = time.monotonic()
    deadline = start + time_limit if time_limit else None
    out = SearchOutcome(f"sharply 2-transitive sets in S_{n} containing identity")
    if n == 2:
        out.found = [PermSet.from_rows([(1, 2), (2, 1)])]
        out.exhausted, out.nodes_visited = True, 1
        out.elapsed = time.monotonic() - start
        return out
    perms = list(permutations(range(n)))
    # first branching choice: the element covering value pair (1, 0) in columns (1, 2)
    branches = [k for k, p in enumerate(perms) if p[0] == 1 and p[1] == 0
                and sum(x == y for x, y in zip(p, range(n))) <= 1]
    results = _run_branches(_sharp_branch, _sharp_init, (n, max_found, max_nodes, deadline), branches, workers)
    out.exhausted = _merge(out, results, max_found)
    out.found = [PermSet.from_rows(sorted(tuple(v + 1 for v in p) for p in w)) for w in out.found]
    if out.guard_hit:
        out.exhausted = False
    out.elapsed = time.monotonic() - start
    return out


# ---------------------------------------------------------------- MOLS pairs

def _reduced_squares_from(n, rows, budget):
    """Yield reduced Latin squares (0-based) extending fixed leading ``rows``."""
    grid = [list(r) for r in rows] + [[i] + [-1] * (n - 1) for i in range(len(rows), n)]
    full = (1 << n) - 1
    rowm = [0] * n
    colm = [0] * n
    for r in range(n):
        for c in range(n):
            v = grid[r][c]
            if v >= 0:
                rowm[r] |= 1 << v
                colm[c] |= 1 << v
    cells = [(r, c) for r in range(len(rows), n) for c in range(1, n)]

    def rec(k):
        if not budget.tick():
            raise _GuardHit
        if k == len(cells):
            yield tuple(tuple(r) for r in grid)
            return
        r, c = cells[k]
        free = full & ~(rowm[r] | colm[c])
        while free:
            low = free & -free
            v = low.bit_length() - 1
            free ^= low
            grid[r][c] = v
            rowm[r] |= low
            colm[c] |= low
            yield from rec(k + 1)
            rowm[r] ^= low
            colm[c] ^= low
        grid[r][c] = -1

    yield from rec(0)


class _GuardHit(Exception):
    pass


def reduced_latin_squares(n: int):
    """All reduced Latin squares of order n (first row and column 1..n), in
    lexicographic order, as tuples of rows with 1-based symbols."""
    budget = _Budget(None, None)
    first = [tuple(range(n))]
    for sq in _reduced_squares_from(n, first, budget):
        yield tuple(tuple(v + 1 for v in r) for r in sq)


def _transversals(a, n, budget=None):
    """Transversals of a 0-based square as column-per-row tuples."""
    out = []
    cols = [0] * n

    def rec(r, usedc, usedv):
        if budget is not None and not budget.tick():
            raise _GuardHit
        if r == n:
            out.append(tuple(cols))
            return
        row = a[r]
        for c in range(n):
            if not usedc >> c & 1:
                bit = 1 << row[c]
                if not usedv & bit:
                    cols[r] = c
                    rec(r + 1, usedc | 1 << c, usedv | bit)

    rec(0, 0, 0)
    return out


def transversals(square) -> list[tuple[int, ...]]:
    """1-based column of each row for every transversal of ``square``."""
    a = [[v - 1 for v in row] for row in square]
    return [tuple(c + 1 for c in t) for t in _transversals(a, len(a))]


def _mates(a, n, budget, limit=None):
    """Orthogonal mates of ``a`` whose first row is 0..n-1.

    Symbol ``v`` of the mate occupies a transversal of ``a`` starting at cell
    (0, v); all n transversals must be cell-disjoint.
    """
    trans = _transversals(a, n, budget)
    groups = [[] for _ in range(n)]
    for t in trans:
        m = 0
        for r, c in enumerate(t):
            m |= 1 << (r * n + c)
        groups[t[0]].append((m, t))
    if any(not g for g in groups):
        return []
    order = sorted(range(n), key=lambda v: len(groups[v]))
    mates = []
    pick: list = [None] * n

    def rec(k, used):
        if not budget.tick():
            raise _GuardHit
        if k == n:
            b = [[0] * n for _ in range(n)]
            for v in range(n):
                for r, c in enumerate(pick[v]):
                    b[r][c] = v
            mates.append(tuple(tuple(r) for r in b))
            return limit is None or len(mates) < limit
        v = order[k]
        for m, t in groups[v]:
            if not used & m:
                pick[v] = t
                if not rec(k + 1, used | m):
                    return False
        return True

    rec(0, 0)
    return mates


def orthogonal_mates(square, limit: int | None = None) -> list[tuple[tuple[int, ...], ...]]:
    a = [[v - 1 for v in row] for row in square]
    n = len(a)
    return [tuple(tuple(v + 1 for v in r) for r in m) for m in _mates(a, n, _Budget(None, None), limit)]


_M: dict = {}


def _mols_init(n, max_found, max_nodes, deadline):
    _M.update(n=n, max_found=max_found, max_nodes=max_nodes, deadline=deadline)


def _mols_branch(second_row):
    n, max_found = _M["n"], _M["max_found"]
    budget = _Budget(_M["max_nodes"], _M["deadline"])
    found = []
    rows = [tuple(range(n)), second_row]
    try:
        for a in _reduced_squares_from(n, rows, budget):
            mates = _mates(a, n, budget, limit=1)
            if mates:
                found.append((a, mates[0]))
                if max_found is not None and len(found) >= max_found:
                    break
    except _GuardHit:
        pass
    return found, budget.nodes, budget.hit


def search_mols_pair(n: int, max_found: int | None = 1, *, max_nodes: int | None = None,
                     time_limit: float | None = None, workers: int = 1, max_degree: int = 7) -> SearchOutcome:
    """Search for a pair of orthogonal Latin squares of order n.

    Every orthogonal pair can be brought, by permuting rows and columns of both
    squares and relabelling each square's symbols, to a reduced first square
    and a mate with first row 1..n.  The first square ranges over all reduced
    squares; for each, one mate is looked for.  Witnesses are (square, mate).
    """
    if not 2 <= n <= max_degree:
        raise PlaneforgeError(f"MOLS pair search supports 2 <= n <= {max_degree}")
    start = time.monotonic()
    deadline = start + time_limit if time_limit else None
    out = SearchOutcome(f"orthogonal pair of Latin squares of order {n}")
    branches = []
    for tail in permutations(range(n)):
        if tail[0] != 1:
            continue
        if any(tail[c] == c for c in range(n)):
            continue
        branches.append(tail)
    results = _run_branches(_mols_branch, _mols_init, (n, max_found, max_nodes, deadline), branches, workers)
    out.exhausted = _merge(out, results, max_found)
    if out.guard_hit:
        out.exhausted = False
    out.found = [
        (LatinSquare(tuple(tuple(v + 1 for v in r) for r in a)), LatinSquare(tuple(tuple(v + 1 for v in r) for r in b)))
        for a, b in out.found
    ]
    out.elapsed = time.monotonic() - start
    return out


# ---------------------------------------------------------- transitive subgroups

_G: dict = {}


def _perm_order(p):
    n = len(p)
    seen = [False] * n
    o = 1
    from math import lcm

    for i in range(n):
        if not seen[i]:
            L, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                L += 1
            o = lcm(o, L)
    return o


def _closure_bounded(gens, n, bound):
    e = tuple(range(n))
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[j] for j in x)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > bound:
                        return None
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def _sub_init(n, target, candidates):
    _G.update(n=n, target=target, cands=candidates)


def _extendable(order, target):
    return any(target % (order * m) == 0 for m in range(2, target // order + 1))


def _sub_extend(item):
    """All groups <H, g> of order dividing the target, for candidate g."""
    elements, gens = item
    n, target, cands = _G["n"], _G["target"], _G["cands"]
    done = set(elements)
    out = []
    nodes = 0
    els = list(elements)
    for g in cands:
        if g in done:
            continue
        # <H, g> == <H, h1 g h2> for h1, h2 in H
        for h1 in els:
            hg = tuple(h1[j] for j in g)
            for h2 in els:
                done.add(tuple(hg[j] for j in h2))
        nodes += 1
        k = _closure_bounded(gens + (g,), n, target)
        if k is not None and target % len(k) == 0:
            out.append((k, gens + (g,)))
    return out, nodes


def search_transitive_subgroups(n: int, target_order: int, max_found: int | None = None, *,
                                max_nodes: int | None = None, time_limit: float | None = None,
                                workers: int = 1, max_degree: int = 7) -> SearchOutcome:
    """Every transitive subgroup of S_n of the given order.

    Subgroups are grown generator by generator, starting from cyclic groups and
    keeping only intermediate groups whose order divides the target, so groups
    that need more than two generators are reached as well.  Candidate
    generators are the elements whose order divides the target.  Each found
    group is checked for sharp 2-transitivity and a regular normal subgroup.
    """
    if not 2 <= n <= max_degree:
        raise PlaneforgeError(f"subgroup search supports 2 <= n <= {max_degree}")
    if target_order < 1 or factorial(n) % target_order:
        raise PlaneforgeError(f"order {target_order} does not divide {n}!")
    start = time.monotonic()
    deadline = start + time_limit if time_limit else None
    out = SearchOutcome(f"transitive subgroups of S_{n} of order {target_order}")
    e = tuple(range(n))
    cands = [p for p in permutations(range(n)) if p != e and target_order % _perm_order(p) == 0]
    seen: set[frozenset] = set()
    finals: list[frozenset] = []
    level = []
    trivial = frozenset([e])
    seen.add(trivial)
    if target_order == 1:
        finals.append(trivial)
    else:
        level.append((trivial, ()))
    complete = True
    init_args = (n, target_order, cands)
    if workers > 1:
        pool = ProcessPoolExecutor(max_workers=workers, initializer=_sub_init, initargs=init_args)
        mapper = pool.map
    else:
        pool = None
        _sub_init(*init_args)
        mapper = map
    try:
        while level:
            if max_nodes is not None and out.nodes_visited >= max_nodes:
                out.guard_hit, complete = "nodes", False
                break
            if deadline is not None and time.monotonic() > deadline:
                out.guard_hit, complete = "time", False
                break
            nxt = []
            for ext, nodes in mapper(_sub_extend, level):
                out.nodes_visited += nodes
                for k, gens in ext:
                    if k in seen:
                        continue
                    seen.add(k)
                    if len(k) == target_order:
                        finals.append(k)
                    elif _extendable(len(k), target_order):
                        nxt.append((k, gens))
            level = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    groups = []
    for k in finals:
        g = PermSet(sorted(Permutation._trusted(tuple(v + 1 for v in p)) for p in k), n)
        if is_transitive(g):
            groups.append(g)
    groups.sort(key=lambda g: [p.images for p in g.elements])
    if max_found is not None and len(groups) > max_found:
        groups = groups[:max_found]
    for g in groups:
        sharp = n >= 2 and check_sharp2t(g).s1_pass
        normal = find_regular_normal(g)
        out.details.append({
            "order": len(g),
            "sharply_2_transitive": sharp,
            "regular_normal_subgroup": None if normal is None else [p.row() for p in normal.elements],
        })
    out.found = groups
    out.exhausted = complete
    out.elapsed = time.monotonic() - start
    return out
