"""Exit criteria.  A summary line per criterion is printed at the end of the run."""

import random
import time

import pytest

from planeforge.cli import run
from planeforge.field import agl1, make_field, make_field_for_order
from planeforge.graph import cycle_cover, pair_group, plane_to_packing
from planeforge.group import PermSet, alternating_group, is_regular_normal, symmetric_group
from planeforge.io import parse_mols, parse_plane
from planeforge.mols import are_orthogonal, fundamental_ols, is_latin, mols_from_group
from planeforge.perm import identity, inverse, is_fixed_point_free, power, product
from planeforge.plane import (
    Plane,
    base_lines,
    bruck_ryser_excluded,
    build_plane,
    coset_blocks,
    determinantal_lines,
    extract_permutations,
    verify_plane,
)
from planeforge.search import search_mols_pair, search_sharp2t_sets, search_transitive_subgroups
from planeforge.sharp import check_observations, check_sharp2t, normalize_coset

from conftest import cyc

PRIME_POWERS = [2, 3, 4, 5, 7, 8, 9]
GOLDEN_FUNDAMENTAL_5 = ((1, 2, 3, 4, 5), (2, 5, 4, 1, 3), (3, 4, 2, 5, 1), (4, 1, 5, 3, 2), (5, 3, 1, 2, 4))


def agl(q):
    return agl1(make_field_for_order(q)).elements


def translations(g):
    return PermSet([p for p in g if p.is_identity() or is_fixed_point_free(p)])


@pytest.mark.criterion(1, "golden planes of order 2 and 3, < 1 s")
@pytest.mark.parametrize("n, name, size", [(2, "fano.plane", 7), (3, "order3.plane", 13)])
def test_c1_golden_planes(capsys, golden, n, name, size):
    t = time.perf_counter()
    assert run(["plane", "build", str(n)]) == 0
    elapsed = time.perf_counter() - t
    built = parse_plane(capsys.readouterr().out)
    printed = parse_plane((golden / name).read_text())
    assert len(built.lines) == size
    assert built.line_set() == printed.line_set()
    assert elapsed < 1.0


@pytest.mark.criterion(2, "four axioms and lambda = 1 for n in {2,3,4,5,7,8,9}, < 5 s")
def test_c2_axiom_suite():
    from itertools import combinations

    t = time.perf_counter()
    for n in PRIME_POWERS:
        p = build_plane(n)
        r = verify_plane(p)
        assert r.passed, (n, r.witnesses)
        pairs = {}
        for line in p.lines:
            for pr in combinations(line, 2):
                pairs[pr] = pairs.get(pr, 0) + 1
        v = n * n + n + 1
        assert len(pairs) == v * (v - 1) // 2 and set(pairs.values()) == {1}
    assert time.perf_counter() - t < 5.0


@pytest.mark.criterion(3, "MOLS golden squares (A_4 triple, agl1(5) fundamental grid)")
def test_c3_a4_mols(golden):
    printed = parse_mols((golden / "a4.mols").read_text())
    m = mols_from_group(alternating_group(4))
    assert [s.grid for s in m.squares] == [s.grid for s in printed.squares]
    assert m.is_mutually_orthogonal
    for a in range(3):
        for b in range(a + 1, 3):
            assert are_orthogonal(m.squares[a], m.squares[b])


@pytest.mark.criterion(3, "MOLS golden squares (A_4 triple, agl1(5) fundamental grid)")
def test_c3_agl5_fundamental_grid():
    g = agl(5)
    sq = fundamental_ols(g, translations(g))
    assert mols_from_group(g).is_mutually_orthogonal
    assert sq.grid == GOLDEN_FUNDAMENTAL_5


@pytest.mark.criterion(4, "metacyclic relations s^5 = t^4 = e, t^-1 s t = s^2 in agl1(5)")
def test_c4_metacyclic_relations():
    f = make_field(5)
    aff = agl1(f)
    s, t = aff.translation, aff.multiplier
    assert s == aff.affine_map(f.one, f.one)
    assert t == aff.affine_map(f.element((2,)), f.zero)
    e = identity(5)
    assert power(s, 5) == e and power(t, 4) == e
    assert product(inverse(t), s, t) == power(s, 2)


@pytest.mark.criterion(5, "odd coset of S_4 normalizes to A_4 with N = V_4")
def test_c5_coset_normalization(odd_coset):
    assert odd_coset[0] == cyc("(1234)", 4)
    g = normalize_coset(odd_coset, 0)
    a4 = alternating_group(4)
    assert g.same_elements(a4)
    r = check_observations(g)
    assert r.s1_pass and r.observations_pass
    v4 = PermSet([identity(4), cyc("(12)(34)", 4), cyc("(13)(24)", 4), cyc("(14)(23)", 4)])
    assert is_regular_normal(g, v4)


@pytest.mark.criterion(6, "Bruck-Ryser sieve over 2..50")
def test_c6_sieve(capsys):
    flagged = {n for n in range(2, 51) if bruck_ryser_excluded(n)}
    assert {6, 14, 21, 22, 30, 33, 38, 42, 46} <= flagged
    assert not flagged & {10, 12, 15, 18, 20, 24, 26, 28}
    assert flagged == {6, 14, 21, 22, 30, 33, 38, 42, 46}  # 45 = 9*5 has square-free part 5
    assert run(["sieve", "bruck-ryser", "2", "50"]) == 0
    assert set(map(int, capsys.readouterr().out.split())) == flagged


@pytest.mark.criterion(7, "order 6: mols-pair exhausts < 10 min, subgroups 6 30 exhausts < 1 min")
def test_c7_mols_pair_6(capsys):
    t = time.perf_counter()
    code = run(["search", "mols-pair", "6"])
    elapsed = time.perf_counter() - t
    out = capsys.readouterr().out
    assert code == 1 and "exhausted, none found" in out
    assert elapsed < 600


@pytest.mark.criterion(7, "order 6: mols-pair exhausts < 10 min, subgroups 6 30 exhausts < 1 min")
def test_c7_subgroups_6_30(capsys):
    t = time.perf_counter()
    code = run(["search", "subgroups", "6", "30"])
    elapsed = time.perf_counter() - t
    assert code == 1 and "exhausted, none found" in capsys.readouterr().out
    assert elapsed < 60


@pytest.mark.criterion(8, "existence witnesses: subgroups 4 12, subgroups 5 20, sharp2t 3")
def test_c8_witnesses():
    out = search_transitive_subgroups(4, 12)
    assert out.exhausted and len(out.found) == 1 and out.found[0].same_elements(alternating_group(4))
    out = search_transitive_subgroups(5, 20)
    assert out.exhausted and out.found
    for g in out.found:
        assert check_sharp2t(g).s1_pass
        n = translations(g)
        assert len(n) == 5 and is_regular_normal(g, n)
    out = search_sharp2t_sets(3)
    assert any(w.same_elements(symmetric_group(3)) for w in out.found)


@pytest.mark.criterion(9, "extract -> regroup -> determinantal lines reproduces the plane")
@pytest.mark.parametrize("n", PRIME_POWERS)
def test_c9_round_trip(n):
    p = build_plane(n)
    perms = extract_permutations(p)
    rebuilt = Plane(n, tuple(base_lines(n) + determinantal_lines(coset_blocks(PermSet(sorted(perms))))))
    assert rebuilt.line_set() == p.line_set()


@pytest.mark.criterion(10, "tight K_7 packing, S_3 pair-group cover, cover <=> sharp")
def test_c10_graph_equivalents():
    pk = plane_to_packing(build_plane(2))
    assert pk.tight and pk.edges_covered == 21 and len(pk.blocks) == 7
    cc = cycle_cover(pair_group(symmetric_group(3)))
    assert cc.complete and cc.arcs_covered == 30
    assert sorted(m for m in cc.cycle_length_multisets() if m) == \
        sorted([(3, 3), (3, 3), (2, 2, 2), (2, 2, 2), (2, 2, 2)])
    positive = [symmetric_group(3), alternating_group(4), agl(5), agl(7)]
    negative = [symmetric_group(4), PermSet([identity(3), cyc("(12)", 3), cyc("(123)", 3)])]
    for g in positive:
        assert cycle_cover(pair_group(g)).complete and check_sharp2t(g).s1_pass
    for g in negative:
        assert not cycle_cover(pair_group(g)).complete and not check_sharp2t(g).s1_pass


@pytest.mark.criterion(11, "witnesses re-validate; 100 mutations per artifact class all flip")
def test_c11_witnesses_revalidate():
    for n in (2, 3, 4, 5):
        for w in search_sharp2t_sets(n).found:
            assert check_sharp2t(w).s1_pass
    for n in (3, 4, 5, 7):
        for a, b in search_mols_pair(n).found:
            assert is_latin(a.grid) and is_latin(b.grid) and are_orthogonal(a, b)
    for n, k in ((4, 12), (5, 20)):
        for g in search_transitive_subgroups(n, k).found:
            assert g.is_group and g.is_transitive and len(g) == k


@pytest.mark.criterion(11, "witnesses re-validate; 100 mutations per artifact class all flip")
def test_c11_mutations():
    rng = random.Random(11)
    planes = {n: build_plane(n) for n in PRIME_POWERS}
    mols = {n: mols_from_group(agl(n)) for n in PRIME_POWERS if n > 2}
    sets = {n: agl(n) for n in PRIME_POWERS}
    flipped = {"plane": 0, "grid": 0, "permset": 0}
    for _ in range(100):
        n = rng.choice(PRIME_POWERS)
        lines = list(planes[n].lines)
        del lines[rng.randrange(len(lines))]
        assert verify_plane(planes[n]).passed
        flipped["plane"] += not verify_plane(Plane(n, tuple(lines))).passed

        n = rng.choice(sorted(mols))
        k = rng.randrange(len(mols[n]))
        grid = [list(r) for r in mols[n].squares[k].grid]
        while True:
            r1, c1, r2, c2 = (rng.randrange(n) for _ in range(4))
            if grid[r1][c1] != grid[r2][c2]:
                break
        grid[r1][c1], grid[r2][c2] = grid[r2][c2], grid[r1][c1]
        flipped["grid"] += not is_latin(grid)

        n = rng.choice(PRIME_POWERS)
        els = list(sets[n])
        del els[rng.randrange(len(els))]
        flipped["permset"] += not check_sharp2t(PermSet(els, n)).s1_pass
    assert flipped == {"plane": 100, "grid": 100, "permset": 100}
