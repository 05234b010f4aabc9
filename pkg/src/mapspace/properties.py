"""Randomized and exhaustive structural checks shared by the self-test and the
test suite.  Each function returns a list of problems (empty when all is well).
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import FreeCDGA, ModelError
from .invariants import check_filtration_shape, check_indecomposables_dual_to_v0
from .lie import FreeDGL, FreeLieAlgebra, LieElement
from .mapping import BSModel


def _sgn(e: int) -> int:
    return -1 if e & 1 else 1


def random_lie_element(lie: FreeLieAlgebra, n: int, rng: random.Random) -> LieElement:
    dim = lie.dim(n)
    coords = {i: Fraction(rng.randint(-3, 3)) for i in range(dim) if rng.random() < 0.6}
    return LieElement(lie, n, coords)


def lie_identity_failures(lie: FreeLieAlgebra, rng: random.Random, trials: int = 30) -> list[str]:
    """Graded antisymmetry and Jacobi on random homogeneous triples."""
    degs = [n for n in range(1, lie.cap + 1) if lie.dim(n)]
    errs = []
    for _ in range(trials):
        a, b, c = (rng.choice(degs) for _ in range(3))
        if a + b + c > lie.cap:
            continue
        x, y, z = (random_lie_element(lie, n, rng) for n in (a, b, c))
        if x.bracket(y) + _sgn(a * b) * y.bracket(x):
            errs.append(f"antisymmetry fails in degrees {a},{b}")
        lhs = x.bracket(y.bracket(z))
        rhs = x.bracket(y).bracket(z) + _sgn(a * b) * y.bracket(x.bracket(z))
        if lhs != rhs:
            errs.append(f"Jacobi fails in degrees {a},{b},{c}")
    return errs


def leibniz_failures(L: FreeDGL, rng: random.Random, trials: int = 30) -> list[str]:
    """``d[x,y] = [dx,y] + (-1)^{|x|}[x,dy]`` and ``d^2 = 0`` on random elements."""
    lie = L.lie
    degs = [n for n in range(1, L.cap + 1) if lie.dim(n)]
    errs = []
    for _ in range(trials):
        a, b = rng.choice(degs), rng.choice(degs)
        if a + b > L.cap:
            continue
        x, y = random_lie_element(lie, a, rng), random_lie_element(lie, b, rng)
        lhs = L.d(x.bracket(y))
        rhs = L.d(x).bracket(y) + _sgn(a) * x.bracket(L.d(y))
        if lhs != rhs:
            errs.append(f"Leibniz fails in degrees {a},{b}")
        if L.d(L.d(x)):
            errs.append(f"d^2 != 0 in degree {a}")
    return errs


def cdga_d_squared_failures(A: FreeCDGA) -> list[str]:
    try:
        A.validate()
    except ModelError as e:
        return [str(e)]
    return []


def primitive_vanishing_failures(M: BSModel) -> list[str]:
    """For a primitive cycle ``β`` of the coalgebra, every ``v⊗β`` is a
    ``δ̄``-cycle (the differential of ``v`` being decomposable)."""
    B = M.B
    errs = []
    for k in range(len(B)):
        if B.iterate(k, 2) or B.d(k):
            continue
        for v in M.order:
            if any(len(m) < 2 for m in M.Y.d_gen.get(v, {})):
                continue
            if M.algebra.d_gen.get(M.index[(v, k)]):
                errs.append(f"δ̄({M.algebra.names[M.index[(v, k)]]}) != 0 for primitive {B.names[k]}")
    return errs


def structure_lemma_failures(M: FreeCDGA) -> list[str]:
    """Indecomposables of the homotopy Lie algebra are dual to ``V_0``, and
    ``d_1`` of each filtration level has the expected bilinear shape."""
    return check_indecomposables_dual_to_v0(M) + check_filtration_shape(M)
