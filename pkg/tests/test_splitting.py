from __future__ import annotations

import pytest

from mapspace.algebra import ModelError
from mapspace.fixtures import (cayley_model, cpn_lie, sphere_lie, sphere_model, triple_product_model,
                               two_cp2_with_cell, wedge_lie)
from mapspace.mapping import mapping_space_model
from mapspace.splitting import (HYPOTHESIS_FAILS, SPLITS, UNKNOWN, decompose, homotopy_ranks,
                                nonfree_witness, splitting_check, uniform_words)

SQUARE = {(0, 0): 1}              # [i,i] on the 2-sphere


@pytest.fixture(scope="module")
def into_even_sphere():
    return splitting_check(sphere_lie(2), SQUARE, 3, sphere_model(6), cap=24)


@pytest.fixture(scope="module")
def into_triple_product():
    return splitting_check(sphere_lie(2), SQUARE, 3, triple_product_model(), cap=30)


def test_square_attached_into_even_sphere_does_not_split(into_even_sphere):
    v = into_even_sphere
    assert v.kind == HYPOTHESIS_FAILS
    assert v.bracket_length == v.whitehead_length == v.d1_depth == 1
    assert v.certificate is not None and v.certificate.degree is not None


def test_square_attached_into_triple_product_splits(into_triple_product):
    v = into_triple_product
    assert v.kind == SPLITS
    assert v.bracket_length == 1 and v.whitehead_length == 0
    assert v.witness.ok and len(v.witness.checks) >= 1


def test_longer_bracket_splits_with_decomposable_tail():
    v = splitting_check(wedge_lie([2, 2]), {(0, (0, 1)): 1}, 4, sphere_model(6), cap=24)
    assert v.kind == SPLITS
    assert (v.bracket_length, v.whitehead_length) == (2, 1)
    gy = v.witness.gammas["y"]
    assert any(len(m) > 1 for m in gy), "expected a decomposable correction term"
    assert v.models.Mb.delta(gy) == {}


def test_gamma_cycles_are_cycles(into_triple_product):
    Mb = into_triple_product.models.Mb
    for g in into_triple_product.witness.gammas.values():
        assert Mb.delta(g) == {}


def test_low_cap_is_reported_as_unknown():
    v = splitting_check(sphere_lie(2), SQUARE, 3, triple_product_model(), cap=12)
    assert v.kind == UNKNOWN
    assert v.blocking_degree is not None and v.blocking_degree >= 12


def test_connectivity_failure_is_a_reason():
    v = splitting_check(sphere_lie(2), SQUARE, 3, sphere_model(4), cap=12)
    assert v.kind == HYPOTHESIS_FAILS
    assert any("connectivity" in r for r in v.reasons)


def test_mixed_bracket_lengths_rejected():
    with pytest.raises(ModelError, match="mixes bracket lengths"):
        uniform_words({2: 1, (0, 1): 1})
    assert uniform_words({(0, (0, 1)): 1}) == 2


def test_fresh_cell_name_avoids_clash(into_even_sphere):
    v = splitting_check(sphere_lie(2), SQUARE, 3, sphere_model(6), cap=24, name="i")
    assert v.kind == into_even_sphere.kind


def test_two_projective_planes_into_cayley_plane():
    D = decompose(two_cp2_with_cell(), cayley_model(), cap=48)
    assert D.ok
    ranks = {n: homotopy_ranks(D, n) for n in range(1, 24) if homotopy_ranks(D, n)}
    assert ranks == {4: 3, 6: 2, 19: 3, 21: 2}
    assert [s[2].kind for s in D.steps] == [SPLITS] * len(D.steps)


def test_decompose_stops_at_first_failure():
    D = decompose(cpn_lie(2), sphere_model(6), cap=24)
    assert not D.ok and D.failure
    assert D.steps[-1][2].kind == HYPOTHESIS_FAILS


def test_projective_three_space_mapping_space_is_not_free():
    mm = mapping_space_model(cpn_lie(3), triple_product_model(7, 8, 9), cap=48)
    assert nonfree_witness(mm.minimal) is not None


def test_projective_plane_mapping_space_is_free():
    mm = mapping_space_model(cpn_lie(2), triple_product_model(), cap=30)
    assert nonfree_witness(mm.minimal) is None
