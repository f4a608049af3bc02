import random

import pytest

from cgtkit.atlas import builtin
from cgtkit.errors import IndexExceedsLimit, NotASubgroup, NotTransitive
from cgtkit.numtower import simple_order
from cgtkit.perm import Permutation, parse_cycles
from cgtkit.stabchain import (
    PermGroup,
    alternating_group,
    coset_action,
    derived_series,
    factorization_check,
    is_primitive,
    is_simple_monte_carlo,
    minimal_block_system,
    symmetric_group,
)

from oracles import closure, derived_orders, random_subgroup


def grp(n, *cycles):
    return PermGroup([parse_cycles(c, n) for c in cycles], n)


F21 = ("(1,2,3,4,5,6,7)", "(2,3,5)(4,7,6)")


def test_orders_of_small_groups():
    assert grp(5, "(1,2,3)", "(3,4,5)").order() == 60
    assert PermGroup([], 7).order() == 1
    assert alternating_group(12).order() == 239500800
    assert grp(7, *F21).order() == 21


def test_m12_order_agrees_with_formula():
    m12 = builtin("M12")
    assert m12.order() == 95040 == simple_order("M12")
    assert m12.degree == 12 and m12.is_transitive()


def test_membership():
    a5 = alternating_group(5)
    assert not a5.contains(parse_cycles("(1,2)", 5))
    for s in a5.generators:
        assert a5.contains(s)
    assert grp(4, "(1,2,3,4)").contains(parse_cycles("(1,3)(2,4)", 4))
    assert not grp(4, "(1,2,3,4)").contains(parse_cycles("(1,2)(3,4)", 4))


def test_orbits_and_stabilizers():
    assert builtin("M12").stabilizer(0).order() == 7920
    assert alternating_group(5).stabilizer(2).order() == 12
    g = grp(3, "(1,2)")
    assert g.stabilizer(2).order() == g.order() == 2
    assert g.orbit(0) == [0, 1] and g.orbit(2) == [2]
    assert sorted(map(sorted, g.orbits())) == [[0, 1], [2]]


def test_coset_actions():
    psl32 = builtin("PSL3_2")
    seven = next(t for t in psl32.elements() if t.order() == 7)
    act = coset_action(psl32, PermGroup([seven], 7))
    assert act.degree == 24 and act.group.is_transitive() and act.group.order() == 168
    a4 = alternating_group(4)
    act4 = coset_action(a4, grp(4, "(1,2,3)"))
    assert act4.degree == 4 and act4.group.order() == 12 and act4.faithful
    whole = coset_action(a4, a4)
    assert whole.degree == 1 and not whole.faithful


def test_coset_action_numbers_h_first_and_is_a_homomorphism():
    g = symmetric_group(5)
    h = grp(5, "(1,2,3)", "(1,2)")
    act = coset_action(g, h)
    assert act.coset_of(parse_cycles("(1,2)", 5)) == 0
    rng = random.Random(4)
    for _ in range(50):
        a, b = g.random_element(rng), g.random_element(rng)
        assert act.image(a * b) == act.image(a) * act.image(b)


def test_coset_action_limits():
    with pytest.raises(IndexExceedsLimit):
        coset_action(symmetric_group(8), PermGroup([], 8), max_index=1000)
    with pytest.raises(NotASubgroup):
        coset_action(alternating_group(5), grp(5, "(1,2)"))


def test_derived_series():
    assert derived_series(symmetric_group(4)).orders == [24, 12, 4, 1]
    a5 = derived_series(alternating_group(5))
    assert a5.orders == [60] and a5.is_perfect and not a5.is_solvable
    f21 = derived_series(grp(7, *F21))
    assert f21.orders == [21, 7, 1] and f21.is_solvable


def test_blocks_and_primitivity():
    assert minimal_block_system(grp(4, "(1,2,3,4)")) == [[0, 2], [1, 3]]
    assert is_primitive(alternating_group(5))
    assert is_primitive(builtin("M12"))
    assert not is_primitive(grp(6, "(1,2,3,4,5,6)"))


def test_simplicity_verdicts():
    a6 = is_simple_monte_carlo(alternating_group(6))
    assert a6.verdict == "simple" and a6.certified
    s6 = is_simple_monte_carlo(symmetric_group(6))
    assert s6.verdict == "not_simple" and s6.witness.order() == 360
    f21 = is_simple_monte_carlo(grp(7, *F21))
    assert f21.verdict == "not_simple" and f21.witness.order() == 7
    assert is_simple_monte_carlo(grp(7, "(1,2,3,4,5,6,7)")).verdict == "simple"


def test_factorization():
    g = builtin("PSL2_11_deg11")
    eleven = next(t for t in g.elements() if t.order() == 11)
    assert factorization_check(g, PermGroup([eleven], 11))
    assert factorization_check(alternating_group(12), builtin("M12"))
    assert not factorization_check(alternating_group(6), grp(6, "(1,2,3)"))
    with pytest.raises(NotTransitive):
        factorization_check(grp(4, "(1,2)"), grp(4, "(1,2)"))


def test_chain_order_matches_closure_on_random_subgroups():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(2, 7)
        g = random_subgroup(rng, n)
        elems = closure(g.gens, n)
        assert g.order() == len(elems)
        assert g.element_tuples() and set(g.element_tuples()) == elems
        other = Permutation(rng.sample(range(n), n))
        assert g.contains(other) == (other.images in elems)


def test_derived_series_matches_commutator_closure():
    rng = random.Random(6)
    for _ in range(25):
        n = rng.randint(3, 6)
        g = random_subgroup(rng, n, max_gens=2)
        assert derived_series(g).orders == derived_orders(g.gens, n)


def test_element_order_divides_group_order():
    rng = random.Random(7)
    for _ in range(40):
        g = random_subgroup(rng, 8)
        x = g.random_element(rng)
        assert g.order() % x.order() == 0
