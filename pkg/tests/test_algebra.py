from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mapspace.algebra import (CapError, FreeCDGA, ModelError, apply_derivation, mono_mul,
                              normalize_monomial, poly_mul)
from mapspace.fixtures import cpn_model, random_minimal_model, sphere_model, triple_product_model

F = Fraction


def inversion_sign(factors, degs):
    """Sign of sorting by counting odd/odd inversions pairwise (oracle)."""
    s = 1
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            if factors[i] > factors[j] and degs[factors[i]] % 2 and degs[factors[j]] % 2:
                s = -s
    return s


def test_odd_square_vanishes():
    assert normalize_monomial((0, 0), [3]) == (0, None)


def test_one_odd_transposition():
    assert normalize_monomial((1, 0), [3, 3]) == (-1, (0, 1))


def test_even_factor_commutes():
    assert normalize_monomial((1, 0), [3, 2]) == (1, (0, 1))


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=0, max_size=6), st.lists(st.integers(1, 4), min_size=4, max_size=4))
def test_normalize_matches_inversion_count(factors, degs):
    s, m = normalize_monomial(factors, degs)
    srt = tuple(sorted(factors))
    repeated_odd = any(a == b and degs[a] % 2 for a, b in zip(srt, srt[1:]))
    if repeated_odd:
        assert s == 0
    else:
        assert m == srt and s == inversion_sign(factors, degs)


def test_odd_generators_anticommute():
    degs = [3, 5]
    assert mono_mul((0,), (1,), degs) == (1, (0, 1))
    assert mono_mul((1,), (0,), degs) == (-1, (0, 1))


def test_bilinearity_example():
    # generators a (odd, id 0) and x (even, id 1): (2a + x^2)(3x) = 6ax + 3x^3
    degs = [3, 2]
    p = {(0,): F(2), (1, 1): F(1)}
    assert poly_mul(p, {(1,): F(3)}, degs) == {(0, 1): F(6), (1, 1, 1): F(3)}


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_product_is_associative_and_graded_commutative(data):
    degs = data.draw(st.lists(st.integers(1, 4), min_size=3, max_size=3))
    mono = st.lists(st.integers(0, 2), min_size=1, max_size=3).map(lambda f: normalize_monomial(f, degs))
    ms = [data.draw(mono) for _ in range(3)]
    ms = [m for s, m in ms if s]
    if len(ms) < 3:
        return
    a, b, c = ({m: F(1)} for m in ms)
    assert poly_mul(poly_mul(a, b, degs), c, degs) == poly_mul(a, poly_mul(b, c, degs), degs)
    da = sum(degs[g] for g in ms[0])
    db = sum(degs[g] for g in ms[1])
    ab, ba = poly_mul(a, b, degs), poly_mul(b, a, degs)
    sign = -1 if da * db % 2 else 1
    assert ab == {m: sign * x for m, x in ba.items()}


def test_leibniz_sign_for_odd_derivation():
    # x, y odd (ids 0, 1); u, v even (ids 2, 3); dx = u, dy = v
    degs = [3, 5, 4, 6]
    vals = {0: {(2,): F(1)}, 1: {(3,): F(1)}}
    got = apply_derivation(vals, 1, {(0, 1): F(1)}, degs)
    # d(xy) = u y - x v
    assert got == {(1, 2): F(1), (0, 3): F(-1)}


def test_zero_derivation():
    assert apply_derivation({}, 1, {(0, 0): F(3)}, [2]) == {}


def test_d_squared_on_y_squared():
    A = FreeCDGA([("x", 2), ("y", 3)], {"y": {(0, 0): 1}})
    y2 = A.mul({(1,): F(1)}, {(1,): F(1)})
    assert y2 == {}                        # y is odd
    x2y = {(0, 0, 1): F(1)}
    assert A.d(A.d(x2y)) == {}
    assert A.d(x2y) == {(0, 0, 0, 0): F(1)}


def test_wordlength_decomposition():
    Y = triple_product_model()
    d = Y.wordlength_decompose("y")
    assert d[0] == {} and d[1] == {} and d[2] == {(0, 1, 2): F(1)}
    S6 = sphere_model(6)
    assert S6.wordlength_decompose("y") == [{}, {(0, 0): F(1)}]


def test_sphere_cohomology():
    S2 = FreeCDGA([("x", 2), ("y", 3)], {"y": {(0, 0): 1}})
    assert S2.betti(6) == [1, 0, 1, 0, 0, 0, 0]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_projective_space_cohomology(n):
    A = cpn_model(n)
    want = [1 if k % 2 == 0 and k <= 2 * n else 0 for k in range(A.cap)]
    assert A.betti() == want


def test_validate_rejects_bad_differentials():
    with pytest.raises(ModelError):
        FreeCDGA([("x", 2), ("y", 4)], {"y": {(0, 0): 1}})          # wrong degree
    with pytest.raises(ModelError):
        # d(dw) = d(xy) = x^3 != 0
        FreeCDGA([("x", 2), ("y", 3), ("w", 4)], {"y": {(0, 0): 1}, "w": {(0, 1): 1}})


def test_cap_is_enforced():
    A = sphere_model(4)
    with pytest.raises(CapError):
        A.cohomology(A.cap)


@pytest.mark.parametrize("seed", range(25))
def test_random_models_square_to_zero(seed):
    M = random_minimal_model(random.Random(seed))
    for n in range(1, M.cap):
        for m in M.basis(n):
            assert M.d(M.d({m: F(1)})) == {}


def test_monomial_order_is_irrelevant():
    degs = [2, 3, 3]
    outs = set()
    for perm in permutations((0, 1, 2)):
        s, m = normalize_monomial(perm, degs)
        outs.add((s * inversion_sign(perm, degs), m))
    assert outs == {(1, (0, 1, 2))}
