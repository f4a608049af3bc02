import random

import pytest

from cgtkit.errors import DegreeMismatch, MalformedCycle, PointOutOfRange
from cgtkit.perm import Permutation, compose, format_cycles, inverse, order, parity, parse_cycles


def P(text, n):
    return parse_cycles(text, n)


def test_parse_three_cycle_on_four_points():
    p = P("(1,2,3)", 4)
    assert p.images == (1, 2, 0, 3)


def test_parse_empty_is_identity():
    p = P("()", 5)
    assert p.is_identity() and p.degree == 5


def test_parse_double_transposition():
    assert order(P("(1,2)(3,4)", 4)) == 2


def test_parse_accepts_spaces():
    assert P("(1 2 3)", 4) == P("(1,2,3)", 4)


@pytest.mark.parametrize("text", ["(1,2,1)", "(1,2)(2,3)", "(1,2", "1,2)", "(a,b)"])
def test_parse_rejects_malformed(text):
    with pytest.raises(MalformedCycle):
        P(text, 4)


def test_parse_point_out_of_range():
    with pytest.raises(PointOutOfRange):
        P("(1,5)", 4)


def test_compose_apply_left_first():
    # 1 -> 2 -> 1, 2 -> 3 -> 3, 3 -> 1 -> 2 under the right action
    assert compose(P("(1,2,3)", 3), P("(1,2)", 3)) == P("(2,3)", 3)
    # the reversed product is the one that gives (1,3)
    assert compose(P("(1,2)", 3), P("(1,2,3)", 3)) == P("(1,3)", 3)
    assert compose(P("(1,2)", 3), P("(1,2)", 3)).is_identity()
    a = P("(1,4,2)(3,5)", 5)
    assert compose(a, Permutation.identity(5)) == a


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(P("(1,2)", 3), P("(1,2)", 4))


def test_inverse_examples():
    assert inverse(P("(1,2,3)", 3)) == P("(1,3,2)", 3)
    assert inverse(Permutation.identity(4)).is_identity()
    assert inverse(P("(1,2)(3,4)", 4)) == P("(1,2)(3,4)", 4)


def test_order_examples():
    assert order(P("(1,2,3)(4,5)", 5)) == 6
    assert order(Permutation.identity(3)) == 1
    assert order(P("(1,2,3,4,5,6,7,8,9,10,11)", 11)) == 11


def test_parity_examples():
    assert parity(P("(1,2)", 2)) == "odd"
    assert parity(P("(1,2,3)", 3)) == "even"
    assert parity(P("(1,2)(3,4)", 4)) == "even"


def test_format_round_trip_sorted_by_smallest_point():
    p = P("(5,6)(3,4,1)", 7)
    assert format_cycles(p) == "(1,3,4)(5,6)"
    assert format_cycles(Permutation.identity(3)) == "()"
    assert P(format_cycles(p), 7) == p


def _rand(rng, n):
    img = list(range(n))
    rng.shuffle(img)
    return Permutation(img)


def test_compose_associative_random_triples():
    rng = random.Random(1)
    for _ in range(10_000):
        n = rng.randint(1, 50)
        a, b, c = (_rand(rng, n) for _ in range(3))
        assert (a * b) * c == a * (b * c)


def test_parity_is_homomorphism():
    rng = random.Random(2)
    for _ in range(2000):
        n = rng.randint(2, 30)
        a, b = _rand(rng, n), _rand(rng, n)
        odd = (parity(a) == "odd") != (parity(b) == "odd")
        assert parity(a * b) == ("odd" if odd else "even")


def test_order_matches_repeated_composition():
    rng = random.Random(3)
    for _ in range(300):
        a = _rand(rng, rng.randint(1, 12))
        k, x = 1, a
        while not x.is_identity():
            x, k = x * a, k + 1
        assert order(a) == k
        assert (a * inverse(a)).is_identity()
