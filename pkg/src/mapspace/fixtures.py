"""Standard models used by the examples, tests and self-test."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .algebra import FreeCDGA, ModelError, monomials
from .chains import FiniteCoalgebra, finite_dual_coalgebra
from .lie import FreeDGL

# -- Sullivan models -------------------------------------------------------------


def sphere_model(n: int) -> FreeCDGA:
    """``∧(x_n)`` for odd ``n``; ``∧(x_n, y_{2n-1})`` with ``dy = x^2`` for even ``n``."""
    if n < 2:
        raise ModelError("spheres of dimension >= 2 only")
    if n % 2:
        return FreeCDGA([("x", n)], {})
    return FreeCDGA([("x", n), ("y", 2 * n - 1)], {"y": {(0, 0): 1}})


def cpn_model(n: int) -> FreeCDGA:
    """``∧(x_2, y_{2n+1})`` with ``dy = x^{n+1}``."""
    return FreeCDGA([("x", 2), ("y", 2 * n + 1)], {"y": {(0,) * (n + 1): 1}})


def triple_product_model(d1: int = 5, d2: int = 6, d3: int = 7) -> FreeCDGA:
    """``∧(x1, x2, x3, y)`` with ``dy = x1 x2 x3``; quadratic part zero, cubic
    differential."""
    return FreeCDGA([("x1", d1), ("x2", d2), ("x3", d3), ("y", d1 + d2 + d3 - 1)],
                    {"y": {(0, 1, 2): 1}})


def depth_two_model() -> FreeCDGA:
    """``∧(a, a', b, c)``, ``|a| = |a'| = 3``, ``db = a a'``, ``dc = a b``."""
    return FreeCDGA([("a", 3), ("a'", 3), ("b", 5), ("c", 7)],
                    {"b": {(0, 1): 1}, "c": {(0, 2): 1}})


def cayley_model() -> FreeCDGA:
    """``∧(x_8, y_23)`` with ``dy = x^3``."""
    return FreeCDGA([("x", 8), ("y", 23)], {"y": {(0, 0, 0): 1}}, cap=48)


# -- Lie models ----------------------------------------------------------------


def sphere_lie(n: int, name: str = "i") -> FreeDGL:
    """``𝕃(ι)`` with ``|ι| = n - 1``."""
    return FreeDGL([(name, n - 1)], {})


def cpn_lie(n: int, q: Fraction = Fraction(1)) -> FreeDGL:
    """``𝕃(a_1..a_n)``, ``|a_k| = 2k - 1``, ``d a_k = 1/2 Σ_{i+j=k} [a_i, a_j]``.

    For ``n = 2`` the top generator is named ``w`` and ``d w = q [i, i]`` matches
    attaching the 4-cell along ``q`` times the Whitehead square.
    """
    if n == 2:
        return FreeDGL([("i", 1), ("w", 3)], {"w": {(0, 0): Fraction(q)}})
    gens = [(f"a{k}", 2 * k - 1) for k in range(1, n + 1)]
    diff = {}
    for k in range(2, n + 1):
        terms = {}
        for i in range(1, k):
            j = k - i
            terms[(i - 1, j - 1)] = terms.get((i - 1, j - 1), 0) + Fraction(1, 2)
        diff[f"a{k}"] = terms
    return FreeDGL(gens, diff)


def wedge_lie(dims: Sequence[int]) -> FreeDGL:
    """A wedge of spheres of the given dimensions."""
    return FreeDGL([(f"i{j + 1}", d - 1) for j, d in enumerate(dims)], {})


def two_cp2_with_cell() -> FreeDGL:
    """``CP^2 ∨ CP^2 ∪ e^4``: cells ``i1, i2`` in dimension 2 and ``w1, w2, w3`` in
    dimension 4 attached along ``[i1,i1]``, ``[i2,i2]``, ``[i1,i2]``."""
    return FreeDGL([("i1", 1), ("i2", 1), ("w1", 3), ("w2", 3), ("w3", 3)],
                   {"w1": {(0, 0): 1}, "w2": {(1, 1): 1}, "w3": {(0, 1): 1}})


def iterated_cell_complex(m0: int, steps: Sequence[tuple[str, Sequence[int]]]) -> FreeDGL:
    """Lie model of ``X_n``: start from ``S^{m0}``; at each step wedge on spheres
    ``S^{m_1}..S^{m_k}`` and attach a cell along ``[α, [ι_1, [.., [ι_{k-1}, ι_k]]]]``.

    ``steps`` lists ``(α, (m_1, .., m_k))`` where ``α`` names an existing cycle
    generator.  The new cell has dimension ``|α| + Σ m_j - k + 2`` (in sphere terms
    ``deg α + Σ m_j - k + 1`` with ``deg α`` the homotopy degree).
    """
    gens = [("i0", m0 - 1)]
    diff: dict = {}
    for s, (alpha, ms) in enumerate(steps):
        names = [g for g, _ in gens]
        if alpha not in names:
            raise ModelError(f"unknown generator {alpha}")
        if alpha in diff:
            raise ModelError(f"{alpha} is not a cycle")
        new = []
        for j, m in enumerate(ms):
            new.append((f"i{s + 1}_{j + 1}", m - 1))
        gens.extend(new)
        ids = {g: n for n, (g, _) in enumerate(gens)}
        word = ids[new[-1][0]]
        for g, _ in reversed(new[:-1]):
            word = (ids[g], word)
        word = (ids[alpha], word)
        deg = dict(gens)[alpha] + sum(m - 1 for m in ms) + 1
        gens.append((f"e{s + 1}", deg))
        diff[f"e{s + 1}"] = {word: 1}
    order = sorted(range(len(gens)), key=lambda n: (gens[n][1], n))
    if order != list(range(len(gens))):
        # keep generators in degree order so that cells attach in order
        perm = {old: new for new, old in enumerate(order)}
        gens2 = [gens[o] for o in order]

        def re(w):
            return perm[w] if isinstance(w, int) else (re(w[0]), re(w[1]))

        diff2 = {k: {re(w): c for w, c in v.items()} for k, v in diff.items()}
        return FreeDGL(gens2, diff2)
    return FreeDGL(gens, diff)


# -- finite cohomology coalgebras -------------------------------------------------


def truncated_polynomial_coalgebra(deg: int, height: int, name: str = "x") -> FiniteCoalgebra:
    """Dual coalgebra of ``Q[x]/(x^{height+1})`` with ``|x| = deg``; the product of
    basis classes ``x^i x^j = x^{i+j}``."""
    names = [name if i == 1 else f"{name}^{i}" for i in range(1, height + 1)]
    degs = [deg * i for i in range(1, height + 1)]
    prods = {}
    for i in range(1, height + 1):
        for j in range(1, height + 1 - i):
            prods[(i - 1, j - 1)] = {i + j - 1: 1}
    return finite_dual_coalgebra(names, degs, prods)


def cpn_cohomology(n: int) -> FiniteCoalgebra:
    return truncated_polynomial_coalgebra(2, n)


def cayley_cohomology() -> FiniteCoalgebra:
    return truncated_polynomial_coalgebra(8, 2)


# -- randomized minimal models ----------------------------------------------------


def random_minimal_model(rng: random.Random, max_gens: int = 5, max_degree: int = 11,
                         density: float = 0.5, tries: int = 20) -> FreeCDGA:
    """A random minimal model: generators in degrees ``2..max_degree`` and, for
    each, a sparse decomposable differential in earlier generators; candidates
    failing ``d^2 = 0`` are rejected and redrawn."""
    n = rng.randint(1, max_gens)
    degs = [rng.randint(2, max_degree // 2 + 1)]
    for _ in range(n - 1):
        # mostly pick degrees that admit a quadratic differential
        if rng.random() < 0.7:
            a, b = rng.choice(degs), rng.choice(degs)
            d = a + b - 1
            if d <= max_degree:
                degs.append(d)
                continue
        degs.append(rng.randint(2, max_degree))
    degs.sort()
    names = [f"v{i}" for i in range(n)]
    diff: dict = {}
    for g in range(n):
        earlier = tuple(degs[:g])
        monos = [m for m in monomials(earlier, degs[g] + 1) if len(m) >= 2] if earlier else []
        if not monos:
            continue
        for _ in range(tries):
            cand = {}
            for m in monos:
                if rng.random() < density:
                    c = rng.choice((-2, -1, 1, 2))
                    cand[m] = Fraction(c)
            if not cand:
                continue
            trial = FreeCDGA(list(zip(names[:g + 1], degs[:g + 1])), {**diff, g: cand}, check=False)
            if not trial.d(cand):
                diff[g] = cand
                break
    return FreeCDGA(list(zip(names, degs)), diff, cap=24)
