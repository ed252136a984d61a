import itertools
import random

import pytest

from ybsolve.exceptions import PermutationError
from ybsolve.perm import (
    Permutation,
    compose,
    cycle_type,
    cycles,
    format_cycles,
    inverse,
    order,
    parse_cycles,
    shift,
    vee,
)


def test_identity_has_order_one():
    assert order(Permutation.identity(4)) == 1
    assert cycles(Permutation.identity(4)) == []


def test_cycles_are_canonical():
    p = Permutation.from_cycles(4, [[3, 2], [1, 0]])
    assert cycles(p) == [[0, 1], [2, 3]]
    assert str(p) == "(x1 x2)(x3 x4)"


def test_compose_applies_right_factor_first():
    p = Permutation((1, 2, 0))
    q = Permutation((1, 0, 2))
    assert compose(p, q).images == (2, 1, 0)
    assert (p * q) == compose(p, q)


def test_inverse_and_order():
    p = Permutation.from_cycles(5, [[0, 1, 2], [3, 4]])
    assert compose(inverse(p), p).is_identity()
    assert order(p) == 6
    assert cycle_type(p) == (2, 3)


def test_rejects_non_bijection():
    with pytest.raises(PermutationError):
        Permutation((0, 0, 1))


def test_from_cycles_rejects_repeated_point():
    with pytest.raises(PermutationError):
        Permutation.from_cycles(3, [[0, 1], [1, 2]])


def test_shift_moves_support():
    p = parse_cycles("(x1 x2)", 2)
    assert format_cycles(shift(p, 2, 4)) == "(x3 x4)"


def test_shift_overflow():
    with pytest.raises(PermutationError):
        shift(Permutation((1, 0)), 1, 2)


def test_vee_interleaves_cycles():
    rho = parse_cycles("(x1 x2)", 4)
    sigma = parse_cycles("(x3 x4)", 4)
    joined = vee(rho, sigma)
    assert format_cycles(joined) == "(x1 x3 x2 x4)"
    assert compose(joined, joined) == compose(rho, sigma)


def test_vee_needs_equal_disjoint_cycles():
    with pytest.raises(PermutationError):
        vee(parse_cycles("(x1 x2)", 5), parse_cycles("(x3 x4 x5)", 5))
    with pytest.raises(PermutationError):
        vee(parse_cycles("(x1 x2)", 3), parse_cycles("(x2 x3)", 3))


def test_parse_cycles_reprints_canonically():
    p = parse_cycles("(x2 x4)(x1 x3)", 4)
    assert format_cycles(p) == "(x1 x3)(x2 x4)"


def test_parse_cycles_accepts_integers_and_labels():
    labels = ["a", "b", "c"]
    assert parse_cycles("(a c)", 3, labels) == parse_cycles("(1 3)", 3, labels)
    assert parse_cycles("", 3).is_identity()
    assert parse_cycles("()", 3).is_identity()


@pytest.mark.parametrize("text", ["(x1 x9)", "x1 x2", "(x1 x2", "(x1 x2)(x2 x3)", "(1 ²)"])
def test_parse_cycles_errors(text):
    with pytest.raises(PermutationError):
        parse_cycles(text, 3)


def _random_permutation(rng, degree):
    images = list(range(degree))
    rng.shuffle(images)
    return Permutation(tuple(images))


def test_compose_with_inverse_is_identity():
    rng = random.Random(20)
    for degree in range(1, 13):
        for _ in range(20):
            p = _random_permutation(rng, degree)
            assert compose(p, inverse(p)).is_identity()
            assert compose(inverse(p), p).is_identity()


def test_format_then_parse_returns_the_permutation():
    rng = random.Random(21)
    for _ in range(1000):
        p = _random_permutation(rng, rng.randint(1, 12))
        assert parse_cycles(format_cycles(p), p.degree) == p


@pytest.mark.parametrize("k", range(2, 7))
def test_vee_squares_to_product_for_every_cycle_order(k):
    for tail_a in itertools.permutations(range(1, k)):
        rho = Permutation.from_cycles(2 * k, [[0, *tail_a]])
        for tail_b in itertools.permutations(range(k + 1, 2 * k)):
            sigma = Permutation.from_cycles(2 * k, [[k, *tail_b]])
            v = vee(rho, sigma)
            assert compose(v, v) == compose(rho, sigma)
            assert order(v) == 2 * k


def test_shift_is_conjugation_by_rotation():
    rng = random.Random(22)
    for _ in range(200):
        degree = rng.randint(1, 8)
        offset = rng.randint(0, 6)
        new_degree = degree + offset
        p = _random_permutation(rng, degree)
        padded = Permutation(p.images + tuple(range(degree, new_degree)))
        rotation = Permutation(tuple((i + offset) % new_degree for i in range(new_degree)))
        assert shift(p, offset, new_degree) == compose(compose(rotation, padded), inverse(rotation))
