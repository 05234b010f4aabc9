from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from mapspace.algebra import FreeCDGA, ModelError
from mapspace.fixtures import (cayley_model, cpn_model, depth_two_model, random_minimal_model,
                               sphere_model, triple_product_model)
from mapspace.invariants import (cup_length, d1_depth, d1_filtration, d_length, homotopy_lie,
                                 kotani_free_test, whitehead_length)
from mapspace.properties import structure_lemma_failures

FIXTURES = {
    **{f"S{n}": sphere_model(n) for n in range(2, 9)},
    **{f"CP{n}": cpn_model(n) for n in range(2, 5)},
    "triple-product": triple_product_model(),
    "depth-two": depth_two_model(),
    "OP2": cayley_model(),
}


def test_filtration_of_even_sphere():
    F = d1_filtration(sphere_model(6))
    assert F.dims() == [1, 2] and F.depth == 1


def test_filtration_when_quadratic_part_vanishes():
    F = d1_filtration(triple_product_model())
    assert F.dims() == [4] and F.depth == 0


def test_depth_two_model():
    M = depth_two_model()
    assert d1_filtration(M).dims() == [2, 3, 4]
    assert d1_depth(M) == 2 == whitehead_length(M)


def test_odd_sphere_has_depth_zero():
    assert d1_depth(sphere_model(5)) == 0 == whitehead_length(sphere_model(5))


def test_whitehead_square_of_even_sphere():
    G = homotopy_lie(sphere_model(2))
    # x_x in degree 1 brackets with itself to a nonzero multiple of x_y
    assert G.bracket({(1, 0): Fraction(1)}, {(1, 0): Fraction(1)}) == {(2, 0): Fraction(-2)}
    assert G.whitehead_length() == 1


def test_projective_three_space_is_abelian():
    G = homotopy_lie(cpn_model(3))
    assert G.whitehead_length() == 0


@pytest.mark.parametrize("name", FIXTURES)
def test_depth_equals_whitehead_length_on_fixtures(name):
    M = FIXTURES[name]
    assert d1_depth(M) == whitehead_length(M)


@pytest.mark.parametrize("seed", range(120))
def test_depth_equals_whitehead_length_on_random_models(seed):
    M = random_minimal_model(random.Random(seed))
    assert d1_depth(M) == whitehead_length(M)


@pytest.mark.parametrize("name", FIXTURES)
def test_structure_lemmas(name):
    assert structure_lemma_failures(FIXTURES[name]) == []


@pytest.mark.parametrize("seed", range(40))
def test_structure_lemmas_on_random_models(seed):
    assert structure_lemma_failures(random_minimal_model(random.Random(1000 + seed))) == []


def test_homotopy_lie_satisfies_identities_on_random_models():
    rng = random.Random(99)
    for _ in range(40):
        assert homotopy_lie(random_minimal_model(rng), check=False).check_identities() == []


def test_d_length():
    assert d_length(sphere_model(4)) == 2
    assert d_length(triple_product_model()) == 3
    assert d_length(sphere_model(3)) == math.inf


@pytest.mark.parametrize("M,want", [(sphere_model(3), 1), (sphere_model(4), 1), (cpn_model(2), 2),
                                    (cpn_model(3), 3), (cayley_model(), 2)],
                         ids=["S3", "S4", "CP2", "CP3", "OP2"])
def test_cup_length(M, want):
    assert cup_length(M).value == want


def test_freeness_test():
    Y = triple_product_model()
    assert not kotani_free_test(3, Y)
    assert kotani_free_test(2, Y)
    assert kotani_free_test(10, sphere_model(3))
    assert not kotani_free_test(2, Y, formal=False)


def test_non_minimal_model_is_rejected():
    A = FreeCDGA([("x", 4), ("y", 3)], {"y": {(0,): 1}})
    with pytest.raises(ModelError):
        d1_depth(A)
