"""Sharp 2-transitivity checks, cycle-form diagnostics and coset normalization."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations

from .errors import PreconditionError
from .group import PermSet, is_group
from .perm import (
    Permutation,
    agreement,
    compose,
    identity,
    inverse,
    is_fixed_point_free,
    order,
    to_cycles,
)
from .field import is_prime

__all__ = [
    "SharpReport",
    "ObservationResult",
    "check_sharp2t",
    "s1_by_column_pairs",
    "s1_by_agreement",
    "check_cycle_conditions",
    "CycleDiagnostic",
    "normalize_coset",
    "check_observations",
]


@dataclass
class ObservationResult:
    name: str
    passed: bool
    detail: str = ""
    witness: object = None


@dataclass
class SharpReport:
    degree: int
    size: int
    s1_pass: bool
    s1_violations: list[tuple[tuple[int, int], tuple[int, int], int]]
    fpf_count: int
    contains_identity: bool
    fast_path_pass: bool
    observation_results: list[ObservationResult] = field(default_factory=list)

    @property
    def observations_pass(self) -> bool:
        return bool(self.observation_results) and all(o.passed for o in self.observation_results)

    def observation(self, name: str) -> ObservationResult:
        for o in self.observation_results:
            if o.name == name:
                return o
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "size": self.size,
            "s1_pass": self.s1_pass,
            "s1_violations": [[list(c), list(v), k] for c, v, k in self.s1_violations],
            "fpf_count": self.fpf_count,
            "contains_identity": self.contains_identity,
            "observations": [
                {"name": o.name, "passed": o.passed, "detail": o.detail} for o in self.observation_results
            ],
        }


def s1_by_column_pairs(s: PermSet, max_violations: int | None = None):
    """Count, for every ordered column pair and value pair, the elements that
    realise it.  Returns the list of (columns, values, count) with count != 1."""
    n = s.degree
    violations = []
    for k in range(n):
        for l in range(n):
            if k == l:
                continue
            counts = Counter((p.images[k], p.images[l]) for p in s.elements)
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if i != j and counts.get((i, j), 0) != 1:
                        violations.append(((k + 1, l + 1), (i, j), counts.get((i, j), 0)))
                        if max_violations is not None and len(violations) >= max_violations:
                            return violations
    return violations


def s1_by_agreement(s: PermSet) -> bool:
    n = s.degree
    if len(s) != n * (n - 1):
        return False
    return all(agreement(p, q) <= 1 for p, q in combinations(s.elements, 2))


def check_sharp2t(s: PermSet, max_violations: int | None = 1000) -> SharpReport:
    """Check that every ordered column pair holds every ordered pair of distinct
    values exactly once.  Both the direct count and the pairwise-agreement
    shortcut are evaluated; a disagreement between them is a bug."""
    n = s.degree
    if n < 2:
        raise PreconditionError("sharp 2-transitivity needs degree >= 2")
    violations = s1_by_column_pairs(s, max_violations)
    counted = not violations and len(s) == n * (n - 1)
    fast = s1_by_agreement(s)
    if counted != fast:  # pragma: no cover - the two routes are equivalent
        raise AssertionError("column-pair count and agreement test disagree")
    return SharpReport(
        degree=n,
        size=len(s),
        s1_pass=counted,
        s1_violations=violations,
        fpf_count=sum(is_fixed_point_free(p) for p in s.elements),
        contains_identity=s.contains_identity,
        fast_path_pass=fast,
    )


@dataclass(frozen=True)
class CycleDiagnostic:
    rule: int  # 1 fixed-point pair, 2 two-cycle, 3 shared consecutive arcs
    pattern: tuple[int, ...]
    elements: tuple[int, ...]  # indices into the set

    def __str__(self) -> str:
        if self.rule == 1:
            what = "fixed-point pair " + "".join(f"({a})" for a in self.pattern)
        elif self.rule == 2:
            what = "2-cycle (" + "".join(map(str, self.pattern)) + ")"
        else:
            what = "string " + "->".join(map(str, self.pattern))
        return f"rule ({self.rule}) repetition: {what} in elements {list(self.elements)}"


def check_cycle_conditions(s: PermSet) -> list[CycleDiagnostic]:
    """Report repeated fixed-point pairs, repeated 2-cycles and repeated chains
    ``i -> j -> k`` (two consecutive arcs inside a cycle of length >= 3)."""
    seen: dict[tuple[int, tuple[int, ...]], list[int]] = defaultdict(list)
    for idx, p in enumerate(s.elements):
        form = to_cycles(p)
        fixed = sorted(c[0] for c in form.cycles if len(c) == 1)
        for pair in combinations(fixed, 2):
            seen[(1, pair)].append(idx)
        for c in form.cycles:
            if len(c) == 2:
                seen[(2, c)].append(idx)
            elif len(c) >= 3:
                L = len(c)
                for t in range(L):
                    seen[(3, (c[t], c[(t + 1) % L], c[(t + 2) % L]))].append(idx)
    out = [
        CycleDiagnostic(rule, pattern, tuple(idxs))
        for (rule, pattern), idxs in seen.items()
        if len(idxs) > 1
    ]
    out.sort(key=lambda d: (d.rule, d.pattern))
    return out


def normalize_coset(s: PermSet, pick: int = 0) -> PermSet:
    """Left-multiply every element by the inverse of ``s[pick]``.

    The picked element becomes the identity; order is preserved.
    """
    if not len(s):
        raise PreconditionError("cannot normalize an empty set")
    if not -len(s) <= pick < len(s):
        raise IndexError(f"pick {pick} out of range for a set of {len(s)}")
    head = inverse(s[pick])
    return PermSet((compose(head, x) for x in s.elements), s.degree)


def _prime_factors(n: int) -> set[int]:
    out, d = set(), 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def check_observations(s: PermSet, report: SharpReport | None = None) -> SharpReport:
    """Evaluate the structural observations on an identity-containing sharply
    2-transitive set and attach them to the report.

    (i)   size n(n-1) and at most n-1 fixed-point-free elements
    (ii)  exactly n-1 fixed-point-free elements
    (iii) those elements plus identity are closed under composition
    (iv)  the whole set is closed (is a group)
    (v)   each ordered pair of distinct symbols is joined by exactly one
          fixed-point-free element
    (vi)  all fixed-point-free elements have one common prime order p | n
    """
    if report is None:
        report = check_sharp2t(s)
    if not report.s1_pass:
        raise PreconditionError("observations need a sharply 2-transitive set (S1 failed)")
    if not report.contains_identity:
        raise PreconditionError("observations need a set containing the identity; normalize first")
    n = s.degree
    fpf = [p for p in s.elements if is_fixed_point_free(p)]
    e = identity(n)
    res = []
    res.append(ObservationResult(
        "i", len(s) == n * (n - 1) and len(fpf) <= n - 1,
        f"size {len(s)}, fixed-point-free {len(fpf)} (bound {n - 1})",
    ))
    res.append(ObservationResult("ii", len(fpf) == n - 1, f"fixed-point-free count {len(fpf)}", fpf))
    sub = PermSet([e] + fpf, n)
    res.append(ObservationResult("iii", is_group(sub), "fixed-point-free elements with identity"))
    res.append(ObservationResult("iv", is_group(s), "whole set closed under composition"))
    movers: dict[tuple[int, int], list[Permutation]] = defaultdict(list)
    for p in fpf:
        for i in range(1, n + 1):
            movers[(i, p(i))].append(p)
    bad = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)
           if i != j and len(movers.get((i, j), [])) != 1]
    res.append(ObservationResult("v", not bad, "unique mover per ordered pair", bad[:5] or None))
    orders = sorted({order(p) for p in fpf})
    p_ok = len(orders) == 1 and is_prime(orders[0]) and n % orders[0] == 0
    res.append(ObservationResult("vi", p_ok, f"orders {orders}", orders[0] if p_ok else orders))
    report.observation_results = res
    return report
