import random

import pytest

from cgtkit.atlas import builtin
from cgtkit.backtrack import centralizer, intersection, normalizer
from cgtkit.errors import BudgetExceeded, DegreeMismatch, NotASubgroup
from cgtkit.perm import Permutation, parse_cycles
from cgtkit.stabchain import PermGroup, alternating_group, symmetric_group

from oracles import centralizer as bf_centralizer
from oracles import closure
from oracles import normalizer as bf_normalizer


def grp(n, *cycles):
    return PermGroup([parse_cycles(c, n) for c in cycles], n)


def test_normalizer_examples():
    assert normalizer(symmetric_group(4), grp(4, "(1,2,3)")).order() == 6
    v4 = grp(4, "(1,2)(3,4)", "(1,3)(2,4)")
    assert normalizer(alternating_group(4), v4).order() == 12


def test_normalizer_of_trivial_is_everything():
    g = alternating_group(6)
    assert normalizer(g, PermGroup([], 6)).order() == 360


def test_normalizer_requires_subgroup_when_asked():
    with pytest.raises(NotASubgroup):
        normalizer(alternating_group(4), grp(4, "(1,2)"), require_subgroup=True)
    # without the flag, k only needs to share the degree
    assert normalizer(alternating_group(4), grp(4, "(1,2)")).order() == 2


def test_centralizer_examples():
    assert centralizer(symmetric_group(4), parse_cycles("(1,2)", 4)).order() == 4
    assert centralizer(alternating_group(5), parse_cycles("(1,2,3,4,5)", 5)).order() == 5
    a5 = alternating_group(5)
    assert centralizer(a5, Permutation.identity(5)).order() == 60


def test_intersection_examples():
    c4 = grp(4, "(1,2,3,4)")
    meet = intersection(c4, alternating_group(4))
    assert meet.order() == 2 and meet.contains(parse_cycles("(1,3)(2,4)", 4))
    a5 = alternating_group(5)
    assert intersection(a5, a5).order() == 60
    m12 = builtin("M12")
    assert intersection(m12.stabilizer(0), m12.stabilizer(1)).order() == 720
    with pytest.raises(DegreeMismatch):
        intersection(a5, alternating_group(4))


def test_normalizer_budget_is_an_error():
    m12 = builtin("M12")
    k = PermGroup([m12.random_element(random.Random(0))], 12)
    with pytest.raises(BudgetExceeded):
        normalizer(symmetric_group(12), k, budget=3)


def _random_group(rng, n):
    style = rng.randrange(3)
    gens = []
    for _ in range(rng.randint(1, 3)):
        if style == 0:
            img = list(range(n))
            rng.shuffle(img)
        else:
            # products of short cycles give a spread of smaller groups
            img = list(range(n))
            pts = rng.sample(range(n), rng.randint(2, 4 if style == 1 else 3))
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a] = b
        gens.append(Permutation(img))
    return PermGroup(gens, n)


def test_backtrack_agrees_with_brute_force_on_random_subgroups_of_s7():
    rng = random.Random(9)
    n = 7
    checked = 0
    for _ in range(200):
        g = _random_group(rng, n)
        g_elems = closure(g.gens, n)
        assert g.order() == len(g_elems)
        pool = sorted(g_elems)
        k = PermGroup([Permutation(rng.choice(pool)) for _ in range(rng.randint(1, 2))], n)
        k_elems = closure(k.gens, n)
        probe = Permutation(rng.sample(range(n), n))
        assert g.contains(probe) == (probe.images in g_elems)

        nk = normalizer(g, k)
        expect = bf_normalizer(g_elems, k.gens, k_elems)
        assert nk.order() == len(expect) and all(t in expect for t in nk.gens)

        ck = centralizer(g, k)
        expect = bf_centralizer(g_elems, k.gens)
        assert ck.order() == len(expect) and all(t in expect for t in ck.gens)
        assert ck.is_subgroup_of(nk) and k.is_normal_in(nk)

        h = _random_group(rng, n)
        h_elems = closure(h.gens, n)
        meet = intersection(g, h)
        expect = g_elems & h_elems
        assert meet.order() == len(expect) and all(t in expect for t in meet.gens)
        checked += 1
    assert checked == 200


def test_normalizer_restricts_to_subgroups():
    rng = random.Random(10)
    s6 = symmetric_group(6)
    for _ in range(30):
        k = PermGroup([s6.random_element(rng)], 6)
        h = _random_group(rng, 6)
        lhs = normalizer(h, k)
        rhs = intersection(normalizer(s6, k), h)
        assert lhs.order() == rhs.order() and lhs.is_subgroup_of(rhs)
