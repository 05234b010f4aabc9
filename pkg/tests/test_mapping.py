from __future__ import annotations

from fractions import Fraction

import pytest

from mapspace.algebra import CapError
from mapspace.fixtures import (cpn_cohomology, cpn_lie, sphere_lie, sphere_model, triple_product_model,
                               two_cp2_with_cell)
from mapspace.mapping import (ConnectivityError, based_bs_model, bs_model, mapping_space_model,
                              minimal_reduce)
from mapspace.properties import primitive_vanishing_failures


@pytest.fixture(scope="module")
def cp2_into_s6():
    return mapping_space_model(cpn_lie(2), sphere_model(6), cap=24)


def test_projective_plane_into_even_sphere_generators(cp2_into_s6):
    A = cp2_into_s6.minimal
    assert sorted(A.degs) == [2, 4, 7, 9]


def test_projective_plane_into_even_sphere_differential(cp2_into_s6):
    A = cp2_into_s6.minimal
    v4, v7 = A.degs.index(4), A.degs.index(7)
    assert A.d_gen[v7] == {(v4, v4): Fraction(-2)}
    assert all(not p for g, p in A.d_gen.items() if g != v7)


def test_reduction_verifies(cp2_into_s6):
    assert cp2_into_s6.reduction.verify() == []


def test_primitive_vanishing(cp2_into_s6):
    assert primitive_vanishing_failures(cp2_into_s6.model) == []


def test_based_model_differential_squares_to_zero(cp2_into_s6):
    cp2_into_s6.model.algebra.validate()


@pytest.mark.parametrize("q", [Fraction(2), Fraction(3), Fraction(1, 2)])
def test_scaled_attaching_map_rescales_differential(q):
    A = mapping_space_model(cpn_lie(2, q), sphere_model(6), cap=24).minimal
    v4, v7 = A.degs.index(4), A.degs.index(7)
    assert A.d_gen[v7] == {(v4, v4): -2 * q}


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("Y", [sphere_model(6), sphere_model(7), triple_product_model()],
                         ids=["S6", "S7", "triple"])
def test_loop_space_models_have_zero_differential(k, Y):
    A = mapping_space_model(sphere_lie(k + 1), Y, cap=2 * max(Y.degs) + 2).minimal
    assert A.is_zero_differential()
    assert sorted(A.degs) == sorted(d - k - 1 for d in Y.degs)


def test_connectivity_error():
    with pytest.raises(ConnectivityError):
        mapping_space_model(cpn_lie(3), sphere_model(6), cap=24)


def test_cap_below_top_generator_is_rejected():
    with pytest.raises(CapError):
        mapping_space_model(cpn_lie(2), sphere_model(6), cap=4)


def test_free_and_based_models_differ_by_constants():
    B = cpn_cohomology(2)
    free, based = bs_model(sphere_model(6), B), based_bs_model(sphere_model(6), B)
    assert len(free.algebra.degs) == len(based.algebra.degs) + 2
    free.algebra.validate()
    based.algebra.validate()


def test_minimal_reduce_on_based_model_matches_pipeline(cp2_into_s6):
    R = minimal_reduce(cp2_into_s6.model)
    assert sorted(R.minimal.degs) == [2, 4, 7, 9]


def test_wedge_with_extra_cell_into_sphere():
    mm = mapping_space_model(two_cp2_with_cell(), sphere_model(6), cap=24)
    assert mm.reduction.verify() == []
    assert primitive_vanishing_failures(mm.model) == []
