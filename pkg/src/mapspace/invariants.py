"""Invariants of Sullivan minimal models: the quadratic-part filtration and its
depth, the homotopy Lie algebra, Whitehead length, d-length, cup length and
the freeness test built from them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import CapError, FreeCDGA, ModelError, normalize_monomial
from .lie import GradedLieAlgebra
from .linalg import ONE, Echelon, kernel, vaddto


def quadratic_part(M: FreeCDGA, g: int) -> dict:
    return {m: c for m, c in M.d_gen.get(g, {}).items() if len(m) == 2}


def _require_minimal(M: FreeCDGA) -> None:
    if not M.linear_part_zero():
        raise ModelError("model is not minimal: some differential has a linear part")


# -- the filtration V_0 ⊂ V_1 ⊂ ... ------------------------------------------


@dataclass
class Filtration:
    """``levels[i]`` is a basis (vectors over generator ids) of ``V_i``."""

    levels: list
    model: FreeCDGA

    @property
    def depth(self) -> int:
        """Greatest ``k`` with ``V_{k-1} ≠ V_k`` (and ``V_{-1} = 0``)."""
        dims = [len(x) for x in self.levels]
        k = 0
        prev = 0
        for i, d in enumerate(dims):
            if d > prev:
                k = i
            prev = d
        return k

    def dims(self) -> list[int]:
        return [len(x) for x in self.levels]

    def level_of(self) -> dict[int, list]:
        """An adapted basis: level ``i`` -> vectors completing ``V_{i-1}`` to ``V_i``."""
        out: dict = {}
        e = Echelon()
        for i, vecs in enumerate(self.levels):
            out[i] = [v for v in vecs if e.add(v)[0]]
        return out


def _wedge2_membership_map(M: FreeCDGA, sub: Sequence[Mapping]):
    """Linear map ``q -> (components of q outside ∧^2 sub)`` for quadratic ``q``.

    Works by changing the generator basis degreewise so that ``sub`` is spanned
    by new basis vectors; a quadratic polynomial lies in ``∧^2 sub`` iff after
    substitution no monomial contains a complement vector.
    """
    degs = M.degs
    new_basis: list[dict] = []
    in_sub: list[bool] = []
    by_deg: dict[int, list] = {}
    for v in sub:
        by_deg.setdefault(degs[next(iter(v))], []).append(v)
    for n in sorted(set(degs)):
        e = Echelon()
        for v in by_deg.get(n, []):
            if e.add(v)[0]:
                new_basis.append(dict(v))
                in_sub.append(True)
        for g in range(len(degs)):
            if degs[g] == n and e.add({g: ONE})[0]:
                new_basis.append({g: ONE})
                in_sub.append(False)
    inv = Echelon(track=True)
    for j, v in enumerate(new_basis):
        inv.add(v, j)
    old_in_new = {g: inv.express({g: ONE}) for g in range(len(degs))}
    ndegs = [degs[next(iter(v))] for v in new_basis]

    def outside(q: Mapping) -> dict:
        out: dict = {}
        for (a, b), c in q.items():
            for i, x in old_in_new[a].items():
                for j, y in old_in_new[b].items():
                    s, m = normalize_monomial((i, j), ndegs)
                    if not s:
                        continue
                    if in_sub[m[0]] and in_sub[m[1]]:
                        continue
                    vaddto(out, {m: ONE}, s * c * x * y)
        return out

    return outside


def d1_filtration(M: FreeCDGA) -> Filtration:
    """``V_0 = ker d_1`` and ``V_i = d_1^{-1}(∧V_{i-1})`` on the generating space."""
    _require_minimal(M)
    gens = list(range(len(M)))
    quads = {g: quadratic_part(M, g) for g in gens}

    def solve_level(sub):
        outside = _wedge2_membership_map(M, sub) if sub is not None else None
        out = []
        for n in sorted(set(M.degs)):
            gs = [g for g in gens if M.degs[g] == n]
            cols = [quads[g] if outside is None else outside(quads[g]) for g in gs]
            for k in kernel(cols):
                out.append({gs[i]: c for i, c in k.items()})
        return out

    levels = [solve_level(None)]
    while len(levels[-1]) < len(gens):
        nxt = solve_level(levels[-1])
        if len(nxt) == len(levels[-1]):
            raise ModelError("filtration stalls before exhausting V; model is not minimal")
        levels.append(nxt)
    return Filtration(levels, M)


def d1_depth(M: FreeCDGA) -> int:
    return d1_filtration(M).depth


# -- homotopy Lie algebra ----------------------------------------------------


def _pair(M: FreeCDGA, g: int, a: int) -> int:
    """``<v_g ; s x_a> = (-1)^{|v_g|} δ_{ga}``."""
    if g != a:
        return 0
    return -1 if M.degs[g] & 1 else 1


def _pair2(M: FreeCDGA, mono: tuple, a: int, b: int) -> int:
    i, j = mono
    s = -1 if (M.degs[i] * M.degs[j]) & 1 else 1
    return _pair(M, i, a) * _pair(M, j, b) + s * _pair(M, j, a) * _pair(M, i, b)


def homotopy_lie(M: FreeCDGA, check: bool = True) -> GradedLieAlgebra:
    """Rational homotopy Lie algebra: basis ``x_v`` dual to the generators,
    ``|x_v| = |v| - 1``, bracket read off the quadratic part of ``d``."""
    _require_minimal(M)
    degs = M.degs
    by_deg: dict[int, list[int]] = {}
    for g, n in enumerate(degs):
        by_deg.setdefault(n - 1, []).append(g)
    dims = {n: len(gs) for n, gs in by_deg.items() if n >= 1}
    if 0 in by_deg:
        raise ModelError("degree-1 generators are not supported (nilpotent fundamental group)")
    top = max(dims, default=0)
    index = {g: (degs[g] - 1, by_deg[degs[g] - 1].index(g)) for g in range(len(degs))}
    names = {n: [M.names[g] for g in gs] for n, gs in by_deg.items()}

    def br(a, i, b, j):
        if a + b > top:
            return None
        ga, gb = by_deg[a][i], by_deg[b][j]
        out = {}
        sb = -1 if b % 2 == 0 else 1  # (-1)^{|x_b| + 1}
        for v in by_deg.get(a + b, []):
            q = quadratic_part(M, v)
            tot = 0
            for mono, c in q.items():
                tot += c * _pair2(M, mono, ga, gb)
            if tot:
                sv = -1 if degs[v] & 1 else 1
                out[index[v]] = Fraction(sv * sb) * tot
        return out

    G = GradedLieAlgebra(dims, br, names=names, top=top)
    G.generator_of = {index[g]: g for g in range(len(degs))}
    if check:
        errs = G.check_identities()
        if errs:
            raise ModelError("homotopy Lie algebra fails identities: " + errs[0])
    return G


def whitehead_length(M: FreeCDGA) -> int:
    return homotopy_lie(M, check=False).whitehead_length()


def d_length(M: FreeCDGA):
    """``1 + min{i : d_i ≠ 0}``, where ``d_i`` raises word length by ``i``;
    ``math.inf`` for the zero differential."""
    _require_minimal(M)
    return min((len(m) for p in M.d_gen.values() for m in p), default=math.inf)


# -- cup length --------------------------------------------------------------


@dataclass
class CupLength:
    """Cup length found in degrees ``<= upto``.  It is a lower bound, and exact
    when the cohomology vanishes above ``upto``."""

    value: int
    upto: int

    def __int__(self) -> int:
        return self.value


def cup_length(A: FreeCDGA, upto: int | None = None) -> CupLength:
    """Longest nonzero product of positive-degree cohomology classes, searched
    in degrees ``<= upto`` (default ``cap - 1``)."""
    top = A.cap - 1 if upto is None else upto
    if top > A.cap - 1:
        raise CapError(f"cup length up to degree {top} needs cap > {top}")
    H = {n: A.cohomology(n) for n in range(1, top + 1)}
    gens = {n: h.reps for n, h in H.items() if h.dim}
    prev = {n: list(r) for n, r in gens.items()}
    length = 1 if prev else 0
    while prev:
        cur: dict = {}
        for e in range(2, top + 1):
            echelon = Echelon()
            keep = []
            for a, reps in gens.items():
                for q in prev.get(e - a, []):
                    for r in reps:
                        prod = A.mul(r, q)
                        if not prod:
                            continue
                        vec = {i: c for i, c in enumerate(H[e].coords(prod)) if c}
                        if vec and echelon.add(vec)[0]:
                            keep.append(prod)
            if keep:
                cur[e] = keep
        if not cur:
            break
        length += 1
        prev = cur
    return CupLength(length, top)


def kotani_free_test(c, Y: FreeCDGA, formal: bool = True) -> bool:
    """``d_length(Y) > c``: the freeness criterion for formal ``X`` with cup length ``c``.

    Formality of ``X`` is taken on trust.  Pass ``formal=False`` for a source
    known not to be formal; the criterion then does not apply and the answer
    is ``False`` (inconclusive, not "not free").
    """
    if not formal:
        return False
    return d_length(Y) > int(c)


# -- structural checks ---------------------------------------------------------


def check_indecomposables_dual_to_v0(M: FreeCDGA) -> list[str]:
    """In each degree, ``[L,L]`` is the annihilator of ``V_0`` under the pairing."""
    F = d1_filtration(M)
    G = homotopy_lie(M, check=False)
    errs = []
    v0_by_deg: dict[int, list] = {}
    for v in F.levels[0]:
        v0_by_deg.setdefault(M.degs[next(iter(v))], []).append(v)
    for d in G.degrees():
        basis = G.basis(d)
        cols = []
        for x in basis:
            g = G.generator_of[x]
            cols.append({i: v.get(g, 0) for i, v in enumerate(v0_by_deg.get(d + 1, [])) if v.get(g)})
        ann = Echelon()
        for k in kernel(cols):
            ann.add({basis[i]: c for i, c in k.items()})
        dec = Echelon()
        for row in G.lower_central_series(1, d):
            dec.add(row)
        same = len(ann) == len(dec) and all(ann.contains(r) for r in dec.rows.values())
        if not same:
            errs.append(f"degree {d}: [L,L] has dim {len(dec)}, annihilator of V_0 has dim {len(ann)}")
    return errs


def check_filtration_shape(M: FreeCDGA) -> list[str]:
    """For ``u`` in ``V_{n+1}``, ``d_1 u`` has only terms ``V_0·V̄_n`` and ``∧^2 V_{n-1}``."""
    F = d1_filtration(M)
    adapted = F.level_of()
    new_basis, level = [], []
    for i, vecs in adapted.items():
        for v in vecs:
            new_basis.append(v)
            level.append(i)
    degs = M.degs
    order = sorted(range(len(new_basis)), key=lambda j: (degs[next(iter(new_basis[j]))], j))
    new_basis = [new_basis[j] for j in order]
    level = [level[j] for j in order]
    inv = Echelon(track=True)
    for j, v in enumerate(new_basis):
        inv.add(v, j)
    old_in_new = {g: inv.express({g: ONE}) for g in range(len(degs))}
    ndegs = [degs[next(iter(v))] for v in new_basis]
    errs = []
    for j, u in enumerate(new_basis):
        n = level[j] - 1
        if n < 1:
            continue
        q: dict = {}
        for g, c in u.items():
            vaddto(q, quadratic_part(M, g), c)
        sub: dict = {}
        for (a, b), c in q.items():
            for i, x in old_in_new[a].items():
                for k, y in old_in_new[b].items():
                    s, m = normalize_monomial((i, k), ndegs)
                    if s:
                        vaddto(sub, {m: ONE}, s * c * x * y)
        for (a, b) in sub:
            la, lb = sorted((level[a], level[b]))
            if lb <= n - 1 or (la == 0 and lb == n):
                continue
            errs.append(f"d_1 of a level-{n + 1} generator has a term of levels ({la},{lb})")
    return errs


def depth_equals_whitehead(M: FreeCDGA) -> bool:
    return d1_depth(M) == whitehead_length(M)
