import random

import pytest
from hypothesis import given, settings, strategies as st

from planeforge.errors import PreconditionError
from planeforge.field import agl1, make_field_for_order
from planeforge.group import PermSet, alternating_group, closure, symmetric_group
from planeforge.perm import Permutation, compose, identity
from planeforge.sharp import (
    check_cycle_conditions,
    check_observations,
    check_sharp2t,
    normalize_coset,
    s1_by_agreement,
    s1_by_column_pairs,
)

from conftest import cyc

CONSTRUCTED = [2, 3, 4, 5, 7, 8, 9]


def agl(q):
    return agl1(make_field_for_order(q)).elements


def test_sharp_examples(a4, odd_coset):
    assert check_sharp2t(a4).s1_pass
    assert check_sharp2t(symmetric_group(3)).s1_pass
    r = check_sharp2t(symmetric_group(4))
    assert not r.s1_pass and r.size == 24 and r.s1_violations
    assert all(count == 2 for _, _, count in r.s1_violations)
    assert check_sharp2t(odd_coset).s1_pass
    assert not check_sharp2t(odd_coset).contains_identity


def test_violation_records_missing_pair(a4):
    dropped = PermSet(list(a4)[1:])
    r = check_sharp2t(dropped)
    assert not r.s1_pass
    assert all(count == 0 for _, _, count in r.s1_violations)


def test_both_s1_routes_agree_random_subsets():
    rng = random.Random(20261014)
    for _ in range(1000):
        n = rng.randint(2, 6)
        pool = list(symmetric_group(n))
        size = n * (n - 1) if rng.random() < 0.6 else rng.randint(1, min(len(pool), n * n))
        s = PermSet(rng.sample(pool, size))
        assert (not s1_by_column_pairs(s) and len(s) == n * (n - 1)) == s1_by_agreement(s)


@pytest.mark.parametrize("q", CONSTRUCTED)
def test_both_routes_agree_on_groups(q):
    g = agl(q)
    assert not s1_by_column_pairs(g) and s1_by_agreement(g)


def test_cycle_condition_examples(a4):
    d = check_cycle_conditions(PermSet([cyc("(12)(34)", 4), cyc("(12)(3)(4)", 4)]))
    assert [(x.rule, x.pattern) for x in d] == [(2, (1, 2))]
    assert check_cycle_conditions(a4) == []
    d = check_cycle_conditions(PermSet([cyc("(123)(456)", 6), cyc("(123)(465)", 6)]))
    rules = {(x.rule, x.pattern) for x in d}
    assert (3, (1, 2, 3)) in rules
    assert all(x.rule == 3 for x in d)
    d = check_cycle_conditions(PermSet([cyc("(1)(2)(34)", 4), cyc("(1)(2)(3)(4)", 4)]))
    assert (1, (1, 2)) in {(x.rule, x.pattern) for x in d}


@pytest.mark.parametrize("q", CONSTRUCTED)
def test_sharp_sets_have_clean_cycle_form(q, odd_coset):
    assert check_cycle_conditions(agl(q)) == []
    assert check_cycle_conditions(odd_coset) == []


def test_normalize_odd_coset(odd_coset):
    assert odd_coset[0] == cyc("(1234)", 4)
    g = normalize_coset(odd_coset, 0)
    assert g.same_elements(alternating_group(4))
    assert g[0] == identity(4)


def test_normalize_identity_pick_unchanged(a4):
    assert normalize_coset(a4, list(a4).index(identity(4))) == a4


def test_normalize_left_coset_of_agl5():
    g = agl(5)
    sigma = cyc("(12)", 5)
    coset = PermSet(compose(sigma, x) for x in g)
    assert not coset.contains_identity
    for pick in (0, 7, 19):
        h = normalize_coset(coset, pick)
        assert closure(h).same_elements(h) and len(h) == 20


def test_normalize_bad_pick(a4):
    with pytest.raises(IndexError):
        normalize_coset(a4, 12)


@st.composite
def translate_args(draw):
    q = draw(st.sampled_from([3, 4, 5]))
    sigma = Permutation(draw(st.permutations(range(1, q + 1))))
    pick = draw(st.integers(0, q * (q - 1) - 1))
    return q, sigma, pick


@settings(max_examples=60, deadline=None)
@given(translate_args())
def test_one_sided_translation_preserves_s1(args):
    q, sigma, pick = args
    g = agl(q)
    left = PermSet(compose(sigma, x) for x in g)
    right = PermSet(compose(x, sigma) for x in g)
    assert check_sharp2t(left).s1_pass and check_sharp2t(right).s1_pass
    norm = normalize_coset(left, pick)
    assert norm.contains_identity and check_sharp2t(norm).s1_pass
    e = list(norm).index(identity(q))
    assert normalize_coset(norm, e) == norm


def test_observations_a4(a4):
    r = check_observations(a4)
    assert r.observations_pass
    assert set(r.observation("ii").witness) == {cyc("(12)(34)", 4), cyc("(13)(24)", 4), cyc("(14)(23)", 4)}
    assert r.observation("vi").witness == 2


def test_observations_agl5():
    r = check_observations(agl(5))
    assert r.observations_pass
    fpf = r.observation("ii").witness
    assert len(fpf) == 4 and all(len(c) == 5 for p in fpf for c in [p.cycle_str().strip("()")])
    assert r.observation("vi").witness == 5


def test_observations_agl9():
    r = check_observations(agl(9))
    assert r.observations_pass and r.fpf_count == 8
    assert r.observation("vi").witness == 3


def test_observations_preconditions(odd_coset):
    with pytest.raises(PreconditionError, match="identity"):
        check_observations(odd_coset)
    with pytest.raises(PreconditionError, match="S1"):
        check_observations(symmetric_group(4))
