"""Deciding whether ``F_*(X ∪ e^{k+1}, Y) → F_*(X, Y)`` splits rationally, and
the cell-by-cell product decomposition of ``F_*(X, Y)``.

A splitting is certified by an explicit map ``ψ`` from the product model
``(∧Z, d) ⊗ (∧(V⊗sw), 0)`` to the model of the bigger mapping space, checked to
commute with differentials and to be an isomorphism on minimal models.
Non-splitting is certified only by an invariant of minimal models (dual
Hurewicz ranks, or a nonzero relation among cycle generators).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from .algebra import FreeCDGA, ModelError, format_poly, monomials
from .chains import ChainCoalgebra, FiniteCoalgebra, chain_inclusion, format_chain, truncated_chains
from .invariants import d1_depth, whitehead_length
from .lie import FreeDGL, LieElement, word_length
from .linalg import ONE, Echelon, kernel, solve, vaddto
from .mapping import BSModel, ConsistencyError, MinimalReduction, minimal_reduce, substitute

SPLITS = "Splits"
HYPOTHESIS_FAILS = "HypothesisFails"
UNKNOWN = "UnknownWithinCap"


class NoCycleError(ModelError):
    """``δ̄(γ_1 + tail) = 0`` has no solution."""


# -- helpers -----------------------------------------------------------------


def monomials_in(A: FreeCDGA, ids, n: int, min_len: int = 1) -> list[tuple]:
    """Degree-``n`` monomials of ``A`` using only the generators ``ids``."""
    ids = sorted(ids)
    sub = monomials([A.degs[g] for g in ids], n)
    return [tuple(ids[i] for i in m) for m in sub if len(m) >= min_len]


def express_in(B: FiniteCoalgebra, vec: Mapping) -> dict:
    """Coordinates of an ambient chain over the basis of ``B``."""
    cache = B.__dict__.setdefault("_express", {})
    byd: dict = {}
    for m, c in vec.items():
        byd.setdefault(B.ambient.degree_of(m), {})[m] = c
    out: dict = {}
    for n, part in byd.items():
        e = cache.get(n)
        if e is None:
            e = Echelon(track=True)
            for k, v in enumerate(B.vectors):
                if B.degrees[k] == n:
                    e.add(v, k)
            cache[n] = e
        x = e.express(part)
        if x is None:
            raise ModelError("chain lies outside the truncated coalgebra")
        vaddto(out, x)
    return out


def dual_hurewicz_ranks(A: FreeCDGA, degrees=None) -> dict[int, int]:
    """Degree -> rank of the linear parts of cocycles (dual of the Hurewicz map)."""
    if degrees is None:
        degrees = sorted(set(A.degs))
    out = {}
    for n in degrees:
        basis = A.basis(n)
        cols = [A.d_mono(m) for m in basis]
        e = Echelon()
        for k in kernel(cols):
            lin = {basis[i]: c for i, c in k.items() if len(basis[i]) == 1}
            if lin:
                e.add(lin)
        out[n] = len(e)
    return out


def nonfree_witness(A: FreeCDGA):
    """A generator ``t`` whose differential is a nonzero polynomial in cycle
    generators.  Then ``δt`` is a nonzero relation among classes that are
    independent modulo decomposables, so ``H(A)`` is not free.  Returns
    ``(t, δt)`` or None."""
    cycles = {g for g in range(len(A)) if not A.d_gen.get(g)}
    for t in range(len(A)):
        dt = A.d_gen.get(t)
        if dt and all(g in cycles for m in dt for g in m):
            return t, dt
    return None


def lie_element(L: FreeDGL, z, degree: int | None = None) -> LieElement:
    if isinstance(z, LieElement):
        return z
    if not z:
        return L.lie.zero(degree)
    return L.element(z)


def uniform_words(z) -> int | None:
    """Bracket length shared by all words of a presentation, or None if mixed."""
    if isinstance(z, LieElement) or not z:
        return None
    words = list(z) if isinstance(z, Mapping) else [z]
    lens = {word_length(w) - 1 for w in words}
    if len(lens) != 1:
        raise ModelError("attaching cycle mixes bracket lengths "
                         f"{sorted(lens)}; give it as words of one bracket length")
    return lens.pop()


def class_bracket_length(L: FreeDGL, z: LieElement):
    """Bracket length of the homology class of ``z`` in ``H(L)``."""
    if not z:
        return math.inf
    n = z.degree
    H = L.homology_lie_algebra(n)
    cs = L.homology(n).coords(z.coords)
    vec = {(n, i): c for i, c in enumerate(cs) if c}
    if not vec:
        return math.inf
    return H.bracket_length(vec)


def attaching_chain(C: ChainCoalgebra, z, w: int) -> dict:
    """A cycle ``sw - Σ ±sx∧s(rest)`` of ``C`` for ``dw = z``.

    Uses the word presentation of ``z`` when its leaves are cycles; otherwise
    solves for a decomposable correction."""
    L = C.dgl
    lie = L.lie
    sw = C.suspend(lie.gen(lie.names[w]))
    n = L.degs[w] + 1
    if isinstance(z, Mapping) and z:
        c = dict(sw)
        for word, coef in z.items():
            if isinstance(word, int):
                c = None
                break
            x, r = word
            ex, er = lie.normalize(x), lie.normalize(r)
            term = C.wedge(C.suspend(ex), C.suspend(er))
            sx = ex.degree + 1
            vaddto(c, term, -(-1 if sx & 1 else 1) * coef)
        if c is not None and not C.d(c):
            return c
    target = {m: -x for m, x in C.d(sw).items()}
    if not target:
        return sw
    cands = [m for m in C.basis(n) if len(m) >= 2]
    x = solve([C.d_mono(m) for m in cands], target)
    if x is None:
        raise ModelError("attaching element is not a cycle of the Lie model")
    c = dict(sw)
    for i, a in x.items():
        vaddto(c, {cands[i]: ONE}, a)
    return c


# -- model setup for one cell ----------------------------------------------------


@dataclass
class CellModels:
    small: FreeDGL
    big: FreeDGL
    N: int
    Bs: FiniteCoalgebra
    Bb: FiniteCoalgebra
    Ms: BSModel
    Mb: BSModel
    Rs: MinimalReduction
    Rb: MinimalReduction
    eta_images: dict
    c_key: int | None


def _copy_dgl(L: FreeDGL, cap: int) -> FreeDGL:
    M = FreeDGL(list(zip(L.names, L.degs)), {}, cap=cap, check=False)
    M.d_gen = {g: dict(t) for g, t in L.d_gen.items()}
    return M


def build_cell_models(L: FreeDGL, z, k: int, Y: FreeCDGA, cap: int, name: str = "w",
                      attach_word: Mapping | None = None) -> CellModels:
    """Based models for ``X`` and ``X ∪ e^{k+1}`` truncated at the same degree,
    with nested coalgebras, their minimal reductions and the restriction map."""
    N = max(L.dim_x(), k + 1)
    lcap = max(L.cap, N + 1, k + 2)
    small = _copy_dgl(L, lcap)
    zl = lie_element(small, z, k - 1)
    big = small.adjoin_cell(name, zl, k)
    big = _copy_dgl(big, lcap)
    Cs = ChainCoalgebra(small, N + 1)
    Cb = ChainCoalgebra(big, N + 1)
    Ts = truncated_chains(small, N, C=Cs)
    Bs = Ts.adapted()
    inc = chain_inclusion(Cs, Cb)
    keep = [inc(v) for v, d in zip(Bs.vectors, Bs.degrees) if d == N]
    w = len(big.degs) - 1
    calpha = attaching_chain(Cb, attach_word if attach_word is not None else z, w)
    Tb = truncated_chains(big, N, preferred=[calpha], keep=keep, C=Cb)
    idx = next(i for i, v in enumerate(Tb.vectors) if v == calpha)
    Bb = Tb.adapted(preferred=[{idx: ONE}], preferred_names=[format_chain(calpha, Cb.names(), sep="")])
    c_key = next(i for i, v in enumerate(Bb.vectors) if v == calpha)
    Ms = BSModel(Y, Bs, cap=cap)
    Mb = BSModel(Y, Bb, cap=cap)
    Rs = minimal_reduce(Ms, cap=cap)
    Rb = minimal_reduce(Mb, cap=cap)
    eta = {}
    for (v, ks), g in Ms.index.items():
        img: dict = {}
        for kb, c in express_in(Bb, inc(Bs.vectors[ks])).items():
            vaddto(img, {(Mb.index[(v, kb)],): ONE}, c)
        eta[g] = img
    return CellModels(small, big, N, Bs, Bb, Ms, Mb, Rs, Rb, eta, c_key)


# -- γ-cycles and ψ ------------------------------------------------------------


def gamma_cycle(cm: CellModels, v: int) -> dict:
    """A δ̄-cycle ``γ_v = v⊗c_α + (decomposable tail)`` in the bigger model."""
    Mb = cm.Mb
    g1 = {(Mb.index[(v, cm.c_key)],): ONE}
    d1 = Mb.delta(g1)
    if not d1:
        return g1
    deg = Mb.algebra.degs[Mb.index[(v, cm.c_key)]]
    earlier = [Mb.index[p] for p in Mb.pairs if Mb.Y.degs[p[0]] < Mb.Y.degs[v]]
    cands = monomials_in(Mb.algebra, earlier, deg, min_len=2)
    x = solve([Mb.delta({m: ONE}) for m in cands], {m: -c for m, c in d1.items()})
    if x is None:
        raise NoCycleError(f"no decomposable tail closes {Mb.algebra.names[Mb.index[(v, cm.c_key)]]}")
    out = dict(g1)
    for i, a in x.items():
        vaddto(out, {cands[i]: ONE}, a)
    return out


def gamma_cycles(L: FreeDGL, z, k: int, Y: FreeCDGA, v, cap: int | None = None) -> dict:
    """``γ_v`` for the cell attached along ``z``; raises NoCycleError when none exists."""
    cm = build_cell_models(L, z, k, Y, cap or _default_cap(Y, k))
    if isinstance(v, str):
        v = Y.index[v]
    return gamma_cycle(cm, v)


@dataclass
class SplittingWitness:
    product: FreeCDGA
    psi: dict                       # product generator -> polynomial in the big model
    gammas: dict                    # Y generator name -> γ_v
    checks: list = field(default_factory=list)   # (description, passed)
    ranks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(p for _, p in self.checks)


@dataclass
class NonSplitCertificate:
    kind: str
    degree: int | None = None
    product_rank: int | None = None
    target_rank: int | None = None
    relation: str | None = None
    nonzero_differentials: list = field(default_factory=list)


@dataclass
class Verdict:
    kind: str
    bracket_length: object
    whitehead_length: int
    d1_depth: int
    connectivity: int
    dim_x: int
    k: int
    reasons: list = field(default_factory=list)
    witness: SplittingWitness | None = None
    certificate: NonSplitCertificate | None = None
    blocking_degree: int | None = None
    models: CellModels | None = None


def product_model(cm: CellModels, wname: str) -> FreeCDGA:
    Zs = cm.Rs.minimal
    gens = list(zip(Zs.names, Zs.degs))
    for v in cm.Mb.order:
        gens.append((f"{cm.Mb.Y.names[v]}⊗s{wname}", cm.Mb.Y.degs[v] - cm.big.degs[-1] - 1))
    return FreeCDGA(gens, dict(Zs.d_gen), cap=cm.Rb.minimal.cap, check=False)


def build_witness(cm: CellModels, upto: int) -> SplittingWitness:
    Mb, Rs, Rb = cm.Mb, cm.Rs, cm.Rb
    wname = cm.big.names[-1]
    P = product_model(cm, wname)
    psi: dict = {}
    for j in range(len(Rs.minimal)):
        psi[j] = substitute(Rs.section(j), cm.eta_images, Mb.degs)
    gammas = {}
    off = len(Rs.minimal)
    for i, v in enumerate(Mb.order):
        g = gamma_cycle(cm, v)
        gammas[Mb.Y.names[v]] = g
        psi[off + i] = g
    W = SplittingWitness(P, psi, gammas)
    closed = all(not Mb.delta(g) for g in gammas.values())
    W.checks.append(("every γ_v is a δ̄-cycle", closed))
    comm = all(Mb.delta(psi[g]) == substitute(P.d_gen.get(g, {}), psi, Mb.degs) for g in range(len(P)))
    W.checks.append(("ψ commutes with differentials", comm))
    e = Echelon()
    for g in range(len(P)):
        lin = {m: c for m, c in Rb.project(psi[g]).items() if len(m) == 1}
        e.add(lin)
    iso = len(e) == len(P) == len(Rb.minimal)
    W.checks.append(("ψ is an isomorphism on minimal models", iso))
    a, b = P.betti(upto), Rb.minimal.betti(upto)
    W.ranks = {"product": a, "target": b, "upto": upto}
    W.checks.append((f"cohomology ranks agree in degrees <= {upto}", a == b))
    return W


def nonsplit_certificate(cm: CellModels) -> NonSplitCertificate | None:
    target = cm.Rb.minimal
    P = product_model(cm, cm.big.names[-1])
    degrees = sorted(set(target.degs) | set(P.degs))
    ht, hp = dual_hurewicz_ranks(target, degrees), dual_hurewicz_ranks(P, degrees)
    nz = [f"δ̄({target.names[g]}) = {format_poly(p, target.names)}" for g, p in sorted(target.d_gen.items())]
    for n in degrees:
        if ht[n] != hp[n]:
            return NonSplitCertificate("dual-hurewicz-rank", n, hp[n], ht[n], nonzero_differentials=nz)
    wt, wp = nonfree_witness(target), nonfree_witness(P)
    if wt and not wp and P.is_zero_differential():
        t, dt = wt
        return NonSplitCertificate("non-free-cohomology", target.degs[t] + 1,
                                   relation=f"{format_poly(dt, target.names)} = δ̄({target.names[t]})",
                                   nonzero_differentials=nz)
    return None


def _default_cap(Y: FreeCDGA, k: int) -> int:
    return 2 * max(Y.degs, default=0) + 2


def splitting_check(X: FreeDGL, z, k: int, Y: FreeCDGA, cap: int | None = None,
                    name: str = "w") -> Verdict:
    """Decide the rational splitting for attaching ``e^{k+1}`` to ``X`` along ``z``
    (a cycle of degree ``k - 1``, as bracket words or a LieElement)."""
    if cap is None:
        cap = _default_cap(Y, k)
    while name in X.names:
        name += "'"
    uniform_words(z)
    conn = min(Y.degs, default=math.inf) - 1
    dimx = X.dim_x()
    lcap = max(X.cap, k + 2, dimx + 1)
    Xc = _copy_dgl(X, lcap)
    zl = lie_element(Xc, z, k - 1)
    if zl.coords and zl.degree != k - 1:
        raise ModelError(f"attaching cycle has degree {zl.degree}, expected {k - 1}")
    bl = class_bracket_length(Xc, zl)
    wl = whitehead_length(Y)
    depth = d1_depth(Y)
    v = Verdict(HYPOTHESIS_FAILS, bl, wl, depth, conn, dimx, k)
    if wl != depth:
        raise ConsistencyError(f"d1-depth {depth} differs from Whitehead length {wl}")
    if conn < max(k + 1, dimx):
        v.reasons.append(f"connectivity {conn} < max(k+1, dim X) = {max(k + 1, dimx)}")
        return v
    cm = build_cell_models(Xc, zl, k, Y, cap, name=name,
                           attach_word=z if isinstance(z, Mapping) else None)
    v.models = cm
    top = max(cm.Rb.minimal.degs, default=0)
    if bl > wl:
        if cap - 1 < top:
            v.kind = UNKNOWN
            v.blocking_degree = top
            v.reasons.append(f"cap {cap} does not reach generator degree {top}")
            return v
        try:
            W = build_witness(cm, cap - 1)
        except NoCycleError as e:
            raise ConsistencyError(f"bracket-length hypothesis holds but {e}") from e
        if not W.ok:
            raise ConsistencyError("splitting witness fails: " +
                                   ", ".join(d for d, p in W.checks if not p))
        v.kind = SPLITS
        v.witness = W
        return v
    v.reasons.append(f"bracket length {bl} <= Whitehead length {wl}")
    v.certificate = nonsplit_certificate(cm)
    return v


# -- full decomposition ----------------------------------------------------------


@dataclass
class Decomposition:
    ok: bool
    cell_counts: dict               # cell dimension -> count
    product: FreeCDGA | None
    steps: list                     # (cell name, dimension, verdict)
    Y: FreeCDGA
    failure: str | None = None

    def homotopy_rank(self, n: int) -> int:
        return sum(cnt * sum(1 for d in self.Y.degs if d == n + k) for k, cnt in self.cell_counts.items())


def sub_dgl(L: FreeDGL, upto: int) -> FreeDGL:
    """The sub-DGL on the first ``upto`` generators (their differentials must not
    involve later generators)."""
    gens = list(zip(L.names, L.degs))[:upto]
    M = FreeDGL(gens, {}, cap=L.cap, check=False)
    for g, t in L.d_gen.items():
        if g < upto:
            if any(h >= upto for w in t for h in w):
                raise ModelError(f"d{L.names[g]} involves a later generator")
            M.d_gen[g] = dict(t)
    return M


def decompose(L: FreeDGL, Y: FreeCDGA, cap: int | None = None, cells=None) -> Decomposition:
    """Attach the cells of ``L`` (one per generator, in order) and check each
    splitting.  ``cells`` optionally gives the attaching words per generator."""
    order = sorted(range(len(L.degs)), key=lambda g: (L.degs[g], g))
    if order != list(range(len(L.degs))):
        raise ModelError("Lie generators must be declared in order of degree")
    steps, counts = [], {}
    for g in range(len(L.degs)):
        small = sub_dgl(L, g)
        k = L.degs[g]
        if cells and L.names[g] in cells:
            z = cells[L.names[g]]
        else:
            t = L.d_gen.get(g, {})
            z = small.lie.from_tensor(t, k - 1) if t else {}
        verdict = splitting_check(small, z, k, Y, cap=cap, name=L.names[g])
        steps.append((L.names[g], k + 1, verdict))
        if verdict.kind != SPLITS:
            return Decomposition(False, counts, None, steps, Y,
                                 failure=f"cell {L.names[g]} (dimension {k + 1}): {verdict.kind}")
        counts[k + 1] = counts.get(k + 1, 0) + 1
    gens = []
    for g in range(len(L.degs)):
        for v in sorted(range(len(Y)), key=lambda h: (Y.degs[h], h)):
            gens.append((f"{Y.names[v]}⊗s{L.names[g]}", Y.degs[v] - L.degs[g] - 1))
    P = FreeCDGA(gens, {}, cap=cap or _default_cap(Y, 0), check=False)
    return Decomposition(True, counts, P, steps, Y)


def homotopy_ranks(obj, n: int) -> int:
    """Rank of ``π_n(F_*(X, Y)) ⊗ Q`` from a decomposition or a minimal reduction."""
    if isinstance(obj, Decomposition):
        return obj.homotopy_rank(n)
    if isinstance(obj, MinimalReduction):
        return obj.ranks(n)
    raise TypeError("expected a Decomposition or a MinimalReduction")
