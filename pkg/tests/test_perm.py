import pytest
from hypothesis import given, settings, strategies as st

from planeforge.errors import PermutationError
from planeforge.perm import (
    CycleForm,
    Permutation,
    agreement,
    compose,
    fixed_points,
    from_cycles,
    identity,
    inverse,
    is_fixed_point_free,
    order,
    parse_permutation,
    power,
    product,
    to_cycles,
)

from conftest import cyc


def perms(min_n=1, max_n=12):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.permutations(range(1, n + 1)).map(Permutation))


def perm_pairs(max_n=12):
    return st.integers(1, max_n).flatmap(lambda n: st.tuples(
        st.permutations(range(1, n + 1)).map(Permutation),
        st.permutations(range(1, n + 1)).map(Permutation)))


def test_rejects_non_bijection():
    with pytest.raises(PermutationError):
        Permutation([1, 1, 3, 4])
    with pytest.raises(PermutationError):
        Permutation([])


def test_compose_golden_inverse_pair():
    assert compose(cyc("(1432)", 4), cyc("(1234)", 4)) == identity(4)


def test_compose_identity_law():
    p = cyc("(1235)(4)", 5)
    assert compose(identity(5), p) == p
    assert compose(p, identity(5)) == p


def test_compose_square_of_three_cycle():
    p = cyc("(123)", 3)
    # chase images by hand: 1->2->3, 2->3->1, 3->1->2
    expected = Permutation([p(p(i)) for i in (1, 2, 3)])
    assert expected == Permutation([3, 1, 2])
    assert compose(p, p) == expected == cyc("(132)", 3)


def test_compose_is_right_to_left():
    p, q = cyc("(12)", 3), cyc("(23)", 3)
    r = compose(p, q)
    assert [r(i) for i in (1, 2, 3)] == [p(q(i)) for i in (1, 2, 3)]
    assert product(q, p) == r


def test_compose_degree_mismatch():
    with pytest.raises(PermutationError):
        compose(identity(3), identity(4))
    with pytest.raises(PermutationError):
        agreement(identity(3), identity(4))


def test_inverse_examples():
    assert inverse(cyc("(1234)", 4)) == cyc("(1432)", 4)
    assert inverse(identity(5)) == identity(5)
    v = cyc("(12)(34)", 4)
    assert inverse(v) == v


@pytest.mark.parametrize("row, text", [
    ((2, 1, 4, 3), "(12)(34)"),
    ((1, 2, 3, 4), "(1)(2)(3)(4)"),
    ((2, 3, 5, 4, 1), "(1235)(4)"),
])
def test_cycle_text(row, text):
    assert str(to_cycles(Permutation(row))) == text


def test_cycle_text_wide_degree_uses_spaces():
    p = from_cycles([(1, 10)], 10)
    assert str(to_cycles(p)).startswith("(1 10)(2)")
    assert parse_permutation("(1 10)", 10) == p
    assert parse_permutation("(10)(1 2)", 10) == from_cycles([(1, 2)], 10)
    with pytest.raises(PermutationError):
        parse_permutation("(110)", 10)


def test_from_cycles_errors():
    with pytest.raises(PermutationError):
        from_cycles(CycleForm(4, ((1, 2), (2, 3), (4,))))
    with pytest.raises(PermutationError):
        from_cycles(CycleForm(4, ((1, 2), (3,))))
    with pytest.raises(PermutationError):
        from_cycles([(1, 5)], 4)


def test_fixed_points():
    assert fixed_points(cyc("(12)(34)", 4)) == set()
    assert is_fixed_point_free(cyc("(12)(34)", 4))
    assert fixed_points(identity(4)) == {1, 2, 3, 4}
    assert fixed_points(cyc("(123)(4)", 4)) == {4}


def test_agreement_examples(a4):
    p = cyc("(1235)(4)", 5)
    assert agreement(p, p) == 5
    assert agreement(identity(4), cyc("(12)", 4)) == 2
    els = list(a4)
    pairs = [(a, b) for i, a in enumerate(els) for b in els[i + 1:]]
    assert len(pairs) == 66
    assert max(agreement(a, b) for a, b in pairs) == 1


def test_order_and_power():
    p = cyc("(12)(345)", 5)
    assert order(p) == 6
    assert power(p, 6) == identity(5)
    assert power(p, -1) == inverse(p)


@given(perms())
def test_inverse_both_sides(p):
    e = identity(p.degree)
    assert compose(p, inverse(p)) == e
    assert compose(inverse(p), p) == e


@settings(max_examples=300)
@given(perms(2, 12))
def test_cycle_round_trip(p):
    c = to_cycles(p)
    assert from_cycles(c) == p
    assert to_cycles(from_cycles(c)) == c
    assert parse_permutation(str(c), p.degree) == p
    # canonical: each cycle min-first, cycles sorted by first element
    assert all(cy[0] == min(cy) for cy in c.cycles)
    assert [cy[0] for cy in c.cycles] == sorted(cy[0] for cy in c.cycles)
    assert sorted(x for cy in c.cycles for x in cy) == list(range(1, p.degree + 1))


@given(perm_pairs())
def test_agreement_equals_fixed_points_of_quotient(pq):
    p, q = pq
    assert agreement(p, q) == len(fixed_points(compose(inverse(q), p)))
