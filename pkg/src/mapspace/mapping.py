"""Sullivan models of mapping spaces ``F(X, Y)`` and ``F_*(X, Y)`` on generators
``v⊗β`` (``v`` a generator of Y's minimal model, ``β`` a basis element of a
finite coalgebra model of X), and their minimal reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

from .algebra import CapError, FreeCDGA, ModelError, normalize_monomial, poly_mul
from .chains import FiniteCoalgebra
from .linalg import ONE, solve, vaddto


class ConnectivityError(ModelError):
    """A generator ``v⊗β`` would have degree ``<= 0``."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed (d^2, chain-map or rank comparison)."""


def _sign(e: int) -> int:
    return -1 if e & 1 else 1


def koszul(a: int, b: int) -> int:
    """Sign for moving a degree-``a`` element past a degree-``b`` one."""
    return _sign(a * b)


def y_order(Y: FreeCDGA) -> list[int]:
    """Generators by (degree, declaration); ``dv`` must only involve earlier ones."""
    order = sorted(range(len(Y)), key=lambda g: (Y.degs[g], g))
    pos = {g: i for i, g in enumerate(order)}
    for g in order:
        for m in Y.d_gen.get(g, {}):
            if any(pos[h] >= pos[g] for h in m):
                raise ModelError(f"d{Y.names[g]} involves a generator that is not earlier")
    return order


class BSModel:
    """``(Q[V⊗B], δ)``, or its based quotient ``(Q[V⊗B^+], δ̄)`` when ``based``.

    ``B`` is a finite coalgebra (positive degrees only; the unit is implicit).
    Generator ``(v, k)`` has degree ``|v| - |β_k|``; ``(v, None)`` stands for
    ``v⊗1`` in the free model.
    """

    def __init__(self, Y: FreeCDGA, B: FiniteCoalgebra, based: bool = True, cap: int | None = None,
                 check: bool = True):
        self.Y = Y
        self.B = B
        self.based = based
        self.order = y_order(Y)
        self.vpos = {g: i for i, g in enumerate(self.order)}
        keys = list(range(len(B)))
        gens, index = [], {}
        for v in self.order:
            slots = keys if based else [None] + keys
            for k in slots:
                deg = Y.degs[v] - (B.degrees[k] if k is not None else 0)
                name = Y.names[v] if k is None else f"{Y.names[v]}⊗{_paren(B.names[k])}"
                if deg < 1:
                    raise ConnectivityError(
                        f"generator {name} has degree {deg}: the connectivity of Y "
                        f"(= {min(Y.degs) - 1}) must be at least the top degree of X "
                        f"(= {B.top_degree()})")
                index[(v, k)] = len(gens)
                gens.append((name, deg))
        self.pairs = list(index)
        self.index = index
        diff = {index[p]: self._delta(*p) for p in self.pairs}
        if cap is None:
            cap = 2 * max((d for _, d in gens), default=0) + 2
        self.algebra = FreeCDGA(gens, diff, cap=cap, check=False)
        if check:
            try:
                self.algebra.validate()
            except ModelError as e:
                raise ConsistencyError(f"mapping-space differential fails: {e}") from e

    def __repr__(self):
        kind = "based" if self.based else "free"
        return f"BSModel({kind}, {len(self.pairs)} generators, cap={self.algebra.cap})"

    @property
    def degs(self):
        return self.algebra.degs

    def gen_degree(self, v: int, k) -> int:
        return self.Y.degs[v] - (self.B.degrees[k] if k is not None else 0)

    def _product(self, factors: Sequence[tuple]) -> tuple:
        """Sign and monomial of ``(v_1⊗β_1)⋯(v_m⊗β_m)``; ``(0, None)`` if it vanishes."""
        ids = []
        for v, k in factors:
            if (v, k) not in self.index:
                return 0, None
            ids.append(self.index[(v, k)])
        degs = [self.gen_degree(v, k) for v, k in factors]
        return normalize_monomial(ids, _Degs(ids, degs))

    def _delta(self, v: int, k) -> dict:
        Y, B = self.Y, self.B
        out: dict = {}
        # part coming from dv, spread over the iterated coproduct of β
        for mono, c in Y.d_gen.get(v, {}).items():
            m = len(mono)
            vdegs = [Y.degs[g] for g in mono]
            for split, e in self._iterate(k, m).items():
                eps = 1
                for s in range(m):
                    bs = B.degrees[split[s]] if split[s] is not None else 0
                    eps *= koszul(bs, sum(vdegs[s + 1:]))
                sgn, prod = self._product(list(zip(mono, split)))
                if sgn:
                    vaddto(out, {prod: ONE}, c * e * eps * sgn)
        # part coming from the differential of B
        if k is not None:
            sv = _sign(Y.degs[v])
            for j, c in B.d(k).items():
                vaddto(out, {(self.index[(v, j)],): ONE}, sv * c)
        return out

    def _iterate(self, k, m: int) -> dict:
        """``(m-1)``-fold coproduct of ``β_k`` with unit slots as ``None``;
        only reduced parts in the based model."""
        if k is None:
            return {} if self.based else {(None,) * m: ONE}
        if self.based:
            return self.B.iterate(k, m)
        out: dict = {}
        # place a reduced iterate of length j into j of the m slots, units elsewhere
        for j in range(1, m + 1):
            red = self.B.iterate(k, j)
            if not red:
                continue
            for slots in combinations(range(m), j):
                for t, c in red.items():
                    full = [None] * m
                    for s, x in zip(slots, t):
                        full[s] = x
                    vaddto(out, {tuple(full): ONE}, c)
        return out

    def delta(self, p: Mapping) -> dict:
        return self.algebra.d(p)

    def generator_degrees(self) -> list[int]:
        return list(self.algebra.degs)


class _Degs:
    """Degree lookup for ``normalize_monomial`` on model generator ids."""

    def __init__(self, ids, degs):
        self.m = dict(zip(ids, degs))

    def __getitem__(self, i):
        return self.m[i]


def _paren(s: str) -> str:
    return f"({s})" if any(ch in s for ch in "+-") and not s.startswith("(") else s


def based_bs_model(Y: FreeCDGA, B: FiniteCoalgebra, cap: int | None = None, check: bool = True) -> BSModel:
    return BSModel(Y, B, based=True, cap=cap, check=check)


def bs_model(Y: FreeCDGA, B: FiniteCoalgebra, cap: int | None = None, check: bool = True) -> BSModel:
    return BSModel(Y, B, based=False, cap=cap, check=check)


def bs_differential(M: BSModel, v, k) -> dict:
    """``δ(v⊗β_k)`` as a polynomial in the generators of ``M``."""
    if isinstance(v, str):
        v = M.Y.index[v]
    return dict(M.algebra.d_gen.get(M.index[(v, k)], {}))


# -- minimal reduction --------------------------------------------------------


@dataclass
class MinimalReduction:
    """Minimal model ``(Q[w], δ_min)`` of a based model whose coalgebra is in an
    adapted basis.

    ``project`` is the quasi-isomorphism ``Q[V⊗B^+] → Q[w]`` that kills the
    contractible generators ``v⊗a_k`` and ``δ̄(v⊗a_k)``; ``section(w)`` (computed
    on demand) returns ``v⊗c + x`` with ``x ∈ Q[V_{<v}⊗B^+]`` and
    ``δ̄ section(w) = section(δ_min w)``.
    """

    model: BSModel
    minimal: FreeCDGA
    w_of: dict            # (v, c) -> w id
    images: dict          # model generator id -> polynomial in w
    _sections: dict = field(default_factory=dict)

    def project(self, p: Mapping) -> dict:
        return substitute(p, self.images, self.minimal.degs)

    def section(self, w: int) -> dict:
        s = self._sections.get(w)
        if s is None:
            s = self._solve_section(w)
            self._sections[w] = s
        return s

    def section_poly(self, p: Mapping) -> dict:
        imgs = {w: self.section(w) for m in p for w in m}
        return substitute(p, imgs, self.model.degs)

    def _solve_section(self, w: int) -> dict:
        M = self.model
        (v, c), = [k for k, x in self.w_of.items() if x == w]
        gen = {(M.index[(v, c)],): ONE}
        target = self.section_poly(self.minimal.d_gen.get(w, {}))
        rhs = dict(target)
        vaddto(rhs, M.delta(gen), -1)
        if not rhs:
            return gen
        deg = self.minimal.degs[w]
        earlier = {M.index[p] for p in M.pairs if M.vpos[p[0]] < M.vpos[v]}
        unknowns = [m for m in M.algebra.basis(deg) if m and all(g in earlier for g in m)]
        cols = [M.delta({m: ONE}) for m in unknowns]
        x = solve(cols, rhs)
        if x is None:
            raise ConsistencyError(f"no correction term for {self.minimal.names[w]}")
        out = dict(gen)
        for i, a in x.items():
            vaddto(out, {unknowns[i]: ONE}, a)
        return out

    def generator_degrees(self) -> list[int]:
        return list(self.minimal.degs)

    def ranks(self, n: int) -> int:
        return sum(1 for d in self.minimal.degs if d == n)

    def verify(self, upto: int | None = None) -> list[str]:
        """Chain-map property of ``project`` on generators, ``δ_min^2 = 0``, and
        equal cohomology ranks in degrees ``<= upto``."""
        errs = []
        M = self.model
        try:
            self.minimal.validate()
        except ModelError as e:
            errs.append(str(e))
        for g in range(len(M.pairs)):
            lhs = self.project(M.delta({(g,): ONE}))
            rhs = self.minimal.d(self.images.get(g, {}))
            if lhs != rhs:
                errs.append(f"projection does not commute with δ on {M.algebra.names[g]}")
        if upto is not None:
            a = M.algebra.betti(upto)
            b = self.minimal.betti(upto)
            if a != b:
                errs.append(f"cohomology ranks differ: model {a}, minimal {b}")
        return errs


def substitute(p: Mapping, images: Mapping, degs) -> dict:
    """Apply the algebra map sending generator ``g`` to ``images[g]`` (missing = 0)."""
    out: dict = {}
    for m, c in p.items():
        acc = {(): ONE}
        for g in m:
            img = images.get(g)
            if not img:
                acc = {}
                break
            acc = poly_mul(acc, img, degs)
            if not acc:
                break
        if acc:
            vaddto(out, acc, c)
    return out


def minimal_reduce(M: BSModel, cap: int | None = None) -> MinimalReduction:
    """Minimal model of a based model by killing acyclic pairs ``(v⊗a, δ̄(v⊗a))``."""
    if not M.based:
        raise ModelError("minimal_reduce needs the based model")
    B = M.B
    if B.roles is None:
        raise ModelError("coalgebra must be in an adapted basis (see FiniteCoalgebra.adapted)")
    b_of_a = B.pairs
    a_of_b = {b: a for a, b in b_of_a.items()}
    w_gens, w_of = [], {}
    for v in M.order:
        for k in range(len(B)):
            if B.roles[k] == "c":
                w_of[(v, k)] = len(w_gens)
                w_gens.append((M.algebra.names[M.index[(v, k)]], M.gen_degree(v, k)))
    wdegs = tuple(d for _, d in w_gens)
    images: dict = {}
    for v in M.order:
        for k in range(len(B)):
            g = M.index[(v, k)]
            role = B.roles[k]
            if role == "c":
                images[g] = {(w_of[(v, k)],): ONE}
        # b's after c's of the same v: their images only use earlier v's
        for k in range(len(B)):
            if B.roles[k] != "b":
                continue
            a = a_of_b[k]
            da = M.delta({(M.index[(v, a)],): ONE})
            lin_key = (M.index[(v, k)],)
            coef = da.pop(lin_key, None)
            if coef is None:
                raise ConsistencyError("acyclic pair does not produce its partner")
            img = substitute(da, images, wdegs)
            images[M.index[(v, k)]] = {m: -x / coef for m, x in img.items()}
    diff = {}
    for (v, k), w in w_of.items():
        diff[w] = substitute(M.delta({(M.index[(v, k)],): ONE}), images, wdegs)
    if cap is None:
        cap = M.algebra.cap
    A = FreeCDGA(w_gens, diff, cap=cap, check=False)
    for w, p in diff.items():
        if any(len(m) < 2 for m in p):
            raise ConsistencyError(f"reduced differential of {A.names[w]} is not decomposable")
    red = MinimalReduction(M, A, w_of, images)
    try:
        A.validate()
    except ModelError as e:
        raise ConsistencyError(str(e)) from e
    return red


@dataclass
class MappingSpaceModel:
    """A based model of ``F_*(X, Y)`` built from a Lie model of ``X``, with its
    minimal reduction (``None`` when not requested)."""

    coalgebra: FiniteCoalgebra
    model: BSModel
    reduction: MinimalReduction | None = None

    @property
    def minimal(self) -> FreeCDGA | None:
        return self.reduction.minimal if self.reduction else None


def mapping_space_model(L, Y: FreeCDGA, cap: int | None = None, minimal: bool = True,
                        check: bool = True) -> MappingSpaceModel:
    """Truncate ``C_*(L)`` at ``dim X``, put it in an adapted basis, and build the
    based model of ``F_*(X, Y)``, reduced to a minimal model if asked."""
    from .chains import truncated_chains
    from .lie import FreeDGL

    N = L.dim_x()
    Lc = FreeDGL(list(zip(L.names, L.degs)), {}, cap=max(L.cap, N + 1), check=False)
    Lc.d_gen = {g: dict(t) for g, t in L.d_gen.items()}
    B = truncated_chains(Lc, N).adapted()
    M = BSModel(Y, B, based=True, cap=cap, check=check)
    top = max(M.algebra.degs, default=0)
    if M.algebra.cap < top + 2:
        g = M.algebra.degs.index(top)
        raise CapError(f"cap {M.algebra.cap} is too small: the differential of {M.algebra.names[g]} "
                       f"lies in degree {top + 1}, so the cap must be at least {top + 2}")
    R = minimal_reduce(M, cap=M.algebra.cap) if minimal else None
    return MappingSpaceModel(B, M, R)
