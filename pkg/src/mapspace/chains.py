"""Quillen chains ``C_*(L) = (∧sL, d_v + d_h)`` of a free DGL and finite
differential graded coalgebras.

``C_*(L)`` is stored as the free graded-commutative algebra on suspended Lie
basis elements (``|sx| = |x| + 1``), materialised up to a degree cap; its
coproduct is the primitively generated one and is evaluated on demand.

The vertical differential is taken as ``d_v(sx) = s(d_L x)`` extended as a
degree -1 derivation.  Together with the horizontal part
``d_h(sx∧sy) = (-1)^{|sx|} s[x,y]`` this makes ``sw - sx∧s[..]`` the cycle
attached to ``dw = [x, ..]`` for odd ``x``; the opposite sign convention
describes the isomorphic DGC of ``(L, -d_L)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import FreeCDGA, ModelError, mono_mul, monomials, poly_mul
from .lie import FreeDGL, LieElement, format_word
from .linalg import ONE, Echelon, kernel, vaddto

DV_SIGN = 1


def koszul(a: int, b: int) -> int:
    """Sign for moving a degree-``a`` element past a degree-``b`` one."""
    return -1 if (a * b) & 1 else 1


def koszul_block_sign(blocks: Sequence[int], degs: Sequence[int]) -> int:
    """Sign of stably sorting positions by block label (Koszul rule on ``degs``)."""
    s = 1
    k = len(blocks)
    for p in range(k):
        for q in range(p + 1, k):
            if blocks[q] < blocks[p]:
                s *= koszul(degs[p], degs[q])
    return s


def split_iterate(mono: tuple, m: int, degs: Sequence[int], reduced: bool = True) -> dict:
    """``m``-fold (reduced) coproduct of a monomial in a primitively generated
    coalgebra ``∧V``: sum over ordered splittings of its factors into ``m`` blocks."""
    k = len(mono)
    out: dict = {}
    fdegs = [degs[g] for g in mono]
    if k == 0:
        if reduced:
            return {}
        return {((),) * m: ONE}
    for blocks in itertools.product(range(m), repeat=k):
        if reduced and len(set(blocks)) < m:
            continue
        s = koszul_block_sign(blocks, fdegs)
        parts = tuple(tuple(g for g, b in zip(mono, blocks) if b == j) for j in range(m))
        x = out.get(parts, 0) + s
        if x:
            out[parts] = Fraction(x)
        else:
            del out[parts]
    return out


class ChainCoalgebra:
    """``C_*(L)`` for a free DGL ``L``, in degrees ``<= cap``."""

    def __init__(self, L: FreeDGL, cap: int | None = None):
        self.dgl = L
        self.cap = L.cap + 1 if cap is None else cap
        if self.cap - 1 > L.cap:
            raise ModelError(f"chains up to degree {self.cap} need the DGL cap >= {self.cap - 1}")
        sgens, sdegs, index = [], [], {}
        for n in range(1, self.cap):
            for i in range(L.lie.dim(n)):
                index[(n, i)] = len(sgens)
                sgens.append((n, i))
                sdegs.append(n + 1)
        self.sgens = sgens
        self.degs = tuple(sdegs)
        self.index = index
        self._d: dict = {}

    def __repr__(self):
        return f"ChainCoalgebra({self.dgl!r}; cap={self.cap})"

    def sname(self, j: int) -> str:
        n, i = self.sgens[j]
        return "s" + format_word(self.dgl.lie.basis(n)[i], self.dgl.names)

    def names(self) -> list[str]:
        return [self.sname(j) for j in range(len(self.sgens))]

    def format(self, p: Mapping) -> str:
        return format_chain(p, self.names())

    def basis(self, n: int) -> tuple:
        return monomials(self.degs, n)

    def suspend(self, x: LieElement) -> dict:
        """``s x`` as an element of ``∧^1 sL``."""
        return {(self.index[(x.degree, i)],): c for i, c in x.coords.items()}

    def suspend_coords(self, n: int, coords: Mapping) -> dict:
        return {(self.index[(n, i)],): c for i, c in coords.items()}

    def wedge(self, p: Mapping, q: Mapping) -> dict:
        return poly_mul(p, q, self.degs)

    def degree_of(self, mono: tuple) -> int:
        return sum(self.degs[g] for g in mono)

    # -- differentials --
    def d_v(self, mono: tuple) -> dict:
        out: dict = {}
        pre = 0
        for pos, g in enumerate(mono):
            n, i = self.sgens[g]
            dx = self.dgl.d_basis(n, i) if n > 1 else {}
            if dx:
                sign = DV_SIGN * (-1 if pre & 1 else 1)
                prefix, suffix = mono[:pos], mono[pos + 1:]
                for j, c in dx.items():
                    sg = self.index[(n - 1, j)]
                    s1, t = mono_mul(prefix, (sg,), self.degs)
                    if not s1:
                        continue
                    s2, t = mono_mul(t, suffix, self.degs)
                    if not s2:
                        continue
                    vaddto(out, {t: ONE}, sign * s1 * s2 * c)
            pre += self.degs[g]
        return out

    def d_h(self, mono: tuple) -> dict:
        out: dict = {}
        k = len(mono)
        degs = self.degs
        lie = self.dgl.lie
        for i in range(k):
            for j in range(i + 1, k):
                gi, gj = mono[i], mono[j]
                di, dj = degs[gi], degs[gj]
                # mono = (-1)^{n_ij} sx_i ∧ sx_j ∧ rest
                pre_i = sum(degs[mono[l]] for l in range(i))
                pre_j = sum(degs[mono[l]] for l in range(j) if l != i)
                nij = di * pre_i + dj * pre_j
                sign = -1 if (di + nij) & 1 else 1
                (ni, ii), (nj, ij) = self.sgens[gi], self.sgens[gj]
                if ni + nj + 1 > self.cap:
                    continue
                br = lie.bracket(lie.basis_element(ni, ii), lie.basis_element(nj, ij))
                if not br:
                    continue
                rest = mono[:i] + mono[i + 1:j] + mono[j + 1:]
                for b, c in br.coords.items():
                    sg = self.index[(ni + nj, b)]
                    s, t = mono_mul((sg,), rest, degs)
                    if s:
                        vaddto(out, {t: ONE}, sign * s * c)
        return out

    def d_mono(self, mono: tuple) -> dict:
        r = self._d.get(mono)
        if r is None:
            r = self.d_v(mono)
            vaddto(r, self.d_h(mono))
            self._d[mono] = r
        return r

    def d(self, p: Mapping) -> dict:
        out: dict = {}
        for m, c in p.items():
            vaddto(out, self.d_mono(m), c)
        return out

    # -- coproduct --
    def reduced_coproduct_iterate(self, beta: Mapping, m: int) -> dict:
        """``m``-fold reduced coproduct (``m >= 2``) of an element of ``C_*(L)``."""
        if m < 2:
            raise ValueError("m >= 2 required")
        out: dict = {}
        for mono, c in beta.items():
            vaddto(out, split_iterate(mono, m, self.degs), c)
        return out

    def coproduct(self, beta: Mapping) -> dict:
        """Full coproduct (with counit terms); keys are pairs of monomials."""
        out: dict = {}
        for mono, c in beta.items():
            vaddto(out, split_iterate(mono, 2, self.degs, reduced=False), c)
        return out

    # -- homology --
    def homology_ranks(self, upto: int | None = None) -> list[int]:
        top = self.cap - 1 if upto is None else upto
        ranks = []
        for n in range(top + 1):
            ranks.append(len(self.homology(n)))
        return ranks

    def homology(self, n: int) -> list[dict]:
        """Cycle representatives of a basis of ``H_n``."""
        if n > self.cap - 1:
            raise ModelError(f"H_{n} needs chains cap > {n}")
        basis = self.basis(n)
        if n == 0:
            return [{(): ONE}]
        cols = [self.d_mono(m) for m in basis]
        cycles = [{basis[i]: c for i, c in k.items()} for k in kernel(cols)]
        bd = Echelon()
        for m in self.basis(n + 1):
            bd.add(self.d_mono(m))
        return [z for z in cycles if bd.add(z)[0]]


def format_chain(p: Mapping, names: Sequence[str], sep: str = " ") -> str:
    """Like ``format_poly`` but with ``∧`` between factors."""
    if not p:
        return "0"
    out = []
    for m in sorted(p, key=lambda m: (len(m), m)):
        c = p[m]
        body = "∧".join(names[g] for g in m) or "1"
        a = abs(c)
        if a != 1:
            body = f"{a}*{body}" if m else str(a)
        out.append(("-" if c < 0 else "+", body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sg, body in out[1:]:
        s += f"{sep}{sg}{sep}{body}"
    return s


def chain_inclusion(small: ChainCoalgebra, big: ChainCoalgebra):
    """The map ``C_*(L') → C_*(L)`` induced by a sub-DGL ``L' ⊂ L`` whose
    generators are the first generators of ``L`` (same ids)."""
    ls, lb = small.dgl.lie, big.dgl.lie
    images = {}
    for j, (n, i) in enumerate(small.sgens):
        if n + 1 > big.cap:
            continue
        coords = lb.coords(ls.tensor_of_basis(n, i), n)
        images[j] = big.suspend_coords(n, coords)

    def apply(p: Mapping) -> dict:
        out: dict = {}
        for m, c in p.items():
            acc = {(): ONE}
            for g in m:
                acc = big.wedge(acc, images[g])
            vaddto(out, acc, c)
        return out

    return apply


def chains(L: FreeDGL, cap: int | None = None) -> ChainCoalgebra:
    return ChainCoalgebra(L, cap)


# -- the reduction of Lemma-type: C_*(L_W) -> (sW ⊕ Q, d_0) ------------------


@dataclass
class RhoReport:
    chain_map: bool
    chain_ranks: list
    target_ranks: list
    problems: list = field(default_factory=list)

    @property
    def quasi_isomorphism(self) -> bool:
        return self.chain_map and self.chain_ranks == self.target_ranks


def rho_reduction(C: ChainCoalgebra, upto: int | None = None) -> RhoReport:
    """Project ``C_*(L_W)`` onto ``Q ⊕ sW`` (killing ``∧^{>=2}`` and brackets) and
    compare homology ranks with ``(sW ⊕ Q, d_0)`` degreewise."""
    L = C.dgl
    top = C.cap - 1 if upto is None else upto
    lie = L.lie
    gen_sg = {}
    for g, dg in enumerate(L.degs):
        if dg + 1 > C.cap:
            continue
        words = lie.basis(dg)
        i = words.index(g)
        gen_sg[C.index[(dg, i)]] = g

    def rho(p: Mapping) -> dict:
        out = {}
        for m, c in p.items():
            if m == ():
                out["1"] = out.get("1", 0) + c
            elif len(m) == 1 and m[0] in gen_sg:
                k = gen_sg[m[0]]
                out[k] = out.get(k, 0) + c
        return {k: v for k, v in out.items() if v}

    def d0(t: Mapping) -> dict:
        out: dict = {}
        for k, c in t.items():
            if k == "1":
                continue
            lin = {w: x for w, x in L.d_gen.get(k, {}).items() if len(w) == 1}
            for w, x in lin.items():
                vaddto(out, {w[0]: ONE}, DV_SIGN * c * x)
        return out

    rep = RhoReport(True, [], [])
    for n in range(top + 2):
        if n > C.cap:
            break
        for m in C.basis(n):
            lhs = rho(C.d_mono(m))
            rhs = d0(rho({m: ONE}))
            if lhs != rhs:
                rep.chain_map = False
                rep.problems.append(f"rho d != d0 rho on {C.format({m: ONE})}")
    rep.chain_ranks = C.homology_ranks(top)
    # homology of (sW ⊕ Q, d_0)
    tr = []
    for n in range(top + 1):
        if n == 0:
            tr.append(1)
            continue
        here = [g for g, dg in enumerate(L.degs) if dg + 1 == n]
        up = [g for g, dg in enumerate(L.degs) if dg + 1 == n + 1]
        cols = [d0({g: ONE}) for g in here]
        z = len(kernel(cols)) if here else 0
        b = Echelon()
        for g in up:
            b.add(d0({g: ONE}))
        tr.append(z - len(b))
    rep.target_ranks = tr
    return rep


# -- finite coalgebras --------------------------------------------------------


class FiniteCoalgebra:
    """A finite-dimensional connected DGC, described on its augmentation ideal.

    ``degrees[k]`` is the (positive, homological) degree of basis element ``k``;
    ``dmap[k]`` its differential; ``cop[k]`` its reduced coproduct as a dict
    ``(i, j) -> coeff``.  ``roles`` optionally tags an adapted basis: ``'a'``
    elements with ``d a = b`` (``'b'``), and homology cycles ``'c'``.
    """

    def __init__(self, names: Sequence[str], degrees: Sequence[int], dmap: Mapping,
                 cop: Mapping, roles: Sequence[str] | None = None, pairs: Mapping | None = None,
                 vectors: Sequence[dict] | None = None, ambient=None):
        self.names = list(names)
        self.degrees = list(degrees)
        self.dmap = {k: dict(v) for k, v in dmap.items() if v}
        self.cop = {k: dict(v) for k, v in cop.items() if v}
        self.roles = list(roles) if roles is not None else None
        self.pairs = dict(pairs or {})
        self.vectors = vectors
        self.ambient = ambient
        self._it: dict = {}

    def __len__(self):
        return len(self.degrees)

    def __repr__(self):
        return f"FiniteCoalgebra({len(self)} basis elements, top degree {self.top_degree()})"

    def top_degree(self) -> int:
        return max(self.degrees, default=0)

    def d(self, k: int) -> dict:
        return self.dmap.get(k, {})

    def iterate(self, k: int, m: int) -> dict:
        """Reduced ``(m-1)``-fold coproduct of basis element ``k`` (``m >= 1``)."""
        key = (k, m)
        r = self._it.get(key)
        if r is not None:
            return r
        if m == 1:
            r = {(k,): ONE}
        else:
            r = {}
            for tail, c in self.iterate(k, m - 1).items():
                first = tail[0]
                for (i, j), e in self.cop.get(first, {}).items():
                    vaddto(r, {(i, j) + tail[1:]: ONE}, c * e)
        self._it[key] = r
        return r

    def cycles_basis(self, n: int) -> list[int]:
        return [k for k, d in enumerate(self.degrees) if d == n]

    def check(self) -> list[str]:
        """``d^2 = 0``, coderivation property and coassociativity on the basis."""
        errs = []
        for k in range(len(self)):
            dd: dict = {}
            for j, c in self.d(k).items():
                vaddto(dd, self.d(j), c)
            if dd:
                errs.append(f"d^2 != 0 on {self.names[k]}")
            # reduced coproduct commutes with d (with Koszul sign on the right factor)
            lhs: dict = {}
            for j, c in self.d(k).items():
                vaddto(lhs, self.cop.get(j, {}), c)
            rhs: dict = {}
            for (i, j), c in self.cop.get(k, {}).items():
                for i2, e in self.d(i).items():
                    vaddto(rhs, {(i2, j): ONE}, c * e)
                s = -1 if self.degrees[i] & 1 else 1
                for j2, e in self.d(j).items():
                    vaddto(rhs, {(i, j2): ONE}, s * c * e)
            # primitive parts: d of an element can have a primitive image whose
            # coproduct terms come from d hitting one side only
            if lhs != rhs:
                errs.append(f"coderivation fails on {self.names[k]}")
            left: dict = {}
            right: dict = {}
            for (i, j), c in self.cop.get(k, {}).items():
                for (a, b), e in self.cop.get(i, {}).items():
                    vaddto(left, {(a, b, j): ONE}, c * e)
                for (a, b), e in self.cop.get(j, {}).items():
                    vaddto(right, {(i, a, b): ONE}, c * e)
            if left != right:
                errs.append(f"coassociativity fails on {self.names[k]}")
        return errs

    def rebase(self, new_vectors: Sequence[Mapping], names: Sequence[str], roles=None,
               pairs=None) -> "FiniteCoalgebra":
        """Same coalgebra in a new basis (``new_vectors`` in current coordinates,
        degree-homogeneous and spanning)."""
        degs = []
        for v in new_vectors:
            ds = {self.degrees[k] for k in v}
            if len(ds) != 1:
                raise ModelError("rebase needs homogeneous nonzero vectors")
            degs.append(ds.pop())
        by_deg: dict[int, Echelon] = {}
        for idx, v in enumerate(new_vectors):
            e = by_deg.setdefault(degs[idx], Echelon(track=True))
            if not e.add(v, idx)[0]:
                raise ModelError("rebase vectors are dependent")
        for n in set(self.degrees):
            if len(by_deg.get(n, ())) != len(self.cycles_basis(n)):
                raise ModelError(f"rebase vectors do not span degree {n}")

        def coords(vec: Mapping) -> dict:
            out: dict = {}
            byd: dict = {}
            for k, c in vec.items():
                byd.setdefault(self.degrees[k], {})[k] = c
            for n, part in byd.items():
                x = by_deg[n].express(part)
                vaddto(out, x)
            return out

        old_coords = {k: coords({k: ONE}) for k in range(len(self))}
        dmap, cop = {}, {}
        for idx, v in enumerate(new_vectors):
            dv: dict = {}
            for k, c in v.items():
                vaddto(dv, self.d(k), c)
            dmap[idx] = coords(dv)
            cv: dict = {}
            for k, c in v.items():
                for (i, j), e in self.cop.get(k, {}).items():
                    for a, x in old_coords[i].items():
                        for b, y in old_coords[j].items():
                            vaddto(cv, {(a, b): ONE}, c * e * x * y)
            cop[idx] = cv
        vectors = None
        if self.vectors is not None:
            vectors = []
            for v in new_vectors:
                amb: dict = {}
                for k, c in v.items():
                    vaddto(amb, self.vectors[k], c)
                vectors.append(amb)
        return FiniteCoalgebra(names, degs, dmap, cop, roles=roles, pairs=pairs,
                               vectors=vectors, ambient=self.ambient)

    def adapted(self, preferred: Sequence[Mapping] = (), preferred_names: Sequence[str] = ()) -> "FiniteCoalgebra":
        """Rebase onto ``{a_k, b_k = d a_k, c_j}``; ``preferred`` cycles (in current
        coordinates) are used first as homology representatives."""
        vecs, names, roles, pairs = [], [], [], {}
        degrees = sorted(set(self.degrees))
        # a's: complement of cycles in each degree, b = d a
        a_of: dict[int, list] = {}
        for n in degrees:
            ks = self.cycles_basis(n)
            cols = [self.d(k) for k in ks]
            e = Echelon()
            chosen = []
            for k, col in zip(ks, cols):
                if col and e.add(col)[0]:
                    chosen.append(k)
            a_of[n] = chosen
        for n in degrees:
            bvecs = []
            for k in a_of.get(n + 1, []):
                bvecs.append((k, self.d(k)))
            zs = self._cycles(n)
            e = Echelon()
            for _, b in bvecs:
                e.add(b)
            cvecs = []
            pref = [(p, nm) for p, nm in zip(preferred, list(preferred_names) + [None] * len(preferred))
                    if p and {self.degrees[k] for k in p} == {n}]
            for p, nm in pref:
                if self._dvec(p):
                    raise ModelError("preferred homology representative is not a cycle")
                if e.add(p)[0]:
                    cvecs.append((p, nm))
            for z in zs:
                if e.add(z)[0]:
                    cvecs.append((z, None))
            for k in a_of[n]:
                idx = len(vecs)
                vecs.append({k: ONE})
                names.append(f"a{idx}")
                roles.append("a")
            for k, b in bvecs:
                idx = len(vecs)
                vecs.append(b)
                names.append(f"b{idx}")
                roles.append("b")
            for z, nm in cvecs:
                idx = len(vecs)
                vecs.append(z)
                names.append(nm or f"c{idx}")
                roles.append("c")
        # pair a's with their b's
        a_idx = {}
        for idx, v in enumerate(vecs):
            if roles[idx] == "a":
                a_idx[next(iter(v))] = idx
        for idx, v in enumerate(vecs):
            if roles[idx] == "b":
                pass
        # b vectors were appended in the order of a_of[n+1]
        pos = {n: 0 for n in degrees}
        for idx, v in enumerate(vecs):
            if roles[idx] == "b":
                n = self.degrees[next(iter(v))]
                k = a_of[n + 1][pos[n]]
                pos[n] += 1
                pairs[a_idx[k]] = idx
        named = [self._name_vec(v) if nm.startswith(("a", "b", "c")) and nm[1:].isdigit() else nm
                 for v, nm in zip(vecs, names)]
        return self.rebase(vecs, named, roles=roles, pairs=pairs)

    def _dvec(self, v: Mapping) -> dict:
        out: dict = {}
        for k, c in v.items():
            vaddto(out, self.d(k), c)
        return out

    def _cycles(self, n: int) -> list[dict]:
        ks = self.cycles_basis(n)
        ker = kernel([self.d(k) for k in ks])
        return [{ks[i]: c for i, c in x.items()} for x in ker]

    def _name_vec(self, v: Mapping) -> str:
        if len(v) == 1:
            (k, c), = v.items()
            if c == 1:
                return self.names[k]
        parts = []
        for k in sorted(v):
            c = v[k]
            body = self.names[k] if abs(c) == 1 else f"{abs(c)}*{self.names[k]}"
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sg, body in parts[1:]:
            s += f"{sg}{body}"
        return f"({s})"

    def homology_ranks(self) -> dict[int, int]:
        out = {}
        for n in sorted(set(self.degrees)):
            z = len(self._cycles(n))
            e = Echelon()
            for k in self.cycles_basis(n + 1):
                e.add(self.d(k))
            if z - len(e):
                out[n] = z - len(e)
        return out


def truncated_chains(L: FreeDGL, N: int | None = None, preferred: Sequence[Mapping] = (),
                     preferred_names: Sequence[str] = (), keep: Sequence[Mapping] = (),
                     C: ChainCoalgebra | None = None) -> FiniteCoalgebra:
    """Finite sub-DGC ``C_{<N} ⊕ C'_N`` of ``C_*(L)`` quasi-isomorphic to it.

    ``N`` defaults to ``dim X = 1 + top generator degree``; then ``H(C_*(L))``
    vanishes above ``N`` and any degree-``N`` subspace meeting the cycles in a
    complement of the boundaries and mapping onto ``d(C_N)`` will do.  ``keep``
    lists degree-``N`` vectors that must lie in the chosen subspace (used to nest
    the truncation of a sub-DGL); ``preferred`` cycles become homology
    representatives.
    """
    if N is None:
        N = L.dim_x()
    if C is None:
        C = ChainCoalgebra(L, N + 1)
    keys, vectors, degrees = [], [], []
    pos = {}
    for n in range(1, N):
        for m in C.basis(n):
            pos[m] = len(keys)
            keys.append(m)
            vectors.append({m: ONE})
            degrees.append(n)
    # degree N: H' ⊕ T
    top = C.basis(N)
    cols = [C.d_mono(m) for m in top]
    bd = Echelon()
    for m in C.basis(N + 1):
        bd.add(C.d_mono(m))
    zs = [{top[i]: c for i, c in k.items()} for k in kernel(cols)]
    chosen = []
    e_h = Echelon()
    e_h.rows = dict(bd.rows)
    for v in list(keep) + list(preferred):
        if not C.d(v) and e_h.add(v)[0]:
            chosen.append(v)
    for z in zs:
        if e_h.add(z)[0]:
            chosen.append(z)
    # T: complement of cycles, keeping requested non-cycles first
    tvecs = []
    img = Echelon()
    for v in list(keep) + [{m: ONE} for m in top]:
        dv = C.d(v)
        if dv and img.add(dv)[0]:
            tvecs.append(v)
    for v in chosen + tvecs:
        keys.append(None)
        vectors.append(v)
        degrees.append(N)
    # express d and reduced coproduct in this basis
    top_e = Echelon(track=True)
    for idx, v in enumerate(vectors):
        if degrees[idx] == N:
            top_e.add(v, idx)

    def coords(p: Mapping) -> dict:
        out: dict = {}
        hi: dict = {}
        for m, c in p.items():
            if m in pos:
                out[pos[m]] = out.get(pos[m], 0) + c
            elif m == ():
                continue
            else:
                hi[m] = c
        if hi:
            x = top_e.express(hi)
            if x is None:
                raise ModelError("element outside the truncated coalgebra")
            vaddto(out, x)
        return {k: v for k, v in out.items() if v}

    dmap, cop = {}, {}
    for idx, v in enumerate(vectors):
        dmap[idx] = coords(C.d(v))
        cv: dict = {}
        for (a, b), c in C.reduced_coproduct_iterate(v, 2).items():
            vaddto(cv, {(pos[a], pos[b]): ONE}, c)
        cop[idx] = cv
    cn = C.names()
    names = [format_chain(v, cn, sep="") for v in vectors]
    fc = FiniteCoalgebra(names, degrees, dmap, cop, vectors=vectors, ambient=C)
    fc.N = N
    return fc


def finite_dual_coalgebra(names: Sequence[str], degrees: Sequence[int], products: Mapping,
                          differential: Mapping | None = None) -> FiniteCoalgebra:
    """Dual coalgebra ``B_*`` of a finite-dimensional connected CDGA ``B``.

    ``names``/``degrees`` describe a basis of ``B^+``; ``products[(i, j)]`` is
    ``e_i e_j`` as a dict over that basis; ``differential[i]`` is ``d e_i``.
    The coproduct dual to the product is ``D(e_k^*) = Σ c_{ij}^k (-1)^{|e_i||e_j|} e_i^*⊗e_j^*``.
    """
    cop: dict = {k: {} for k in range(len(names))}
    for (i, j), prod in products.items():
        for k, c in prod.items():
            s = -1 if (degrees[i] * degrees[j]) & 1 else 1
            vaddto(cop[k], {(i, j): ONE}, s * Fraction(c))
    dmap: dict = {k: {} for k in range(len(names))}
    for i, dv in (differential or {}).items():
        for k, c in dv.items():
            # dual of d: (d_* e_k^*)(e_i) = e_k^*(d e_i)
            vaddto(dmap[k], {i: ONE}, Fraction(c))
    return FiniteCoalgebra(list(names), degrees, dmap, cop)


# -- cochains -----------------------------------------------------------------


def dual_cochains(L: FreeDGL, cap: int | None = None) -> FreeCDGA:
    """``C^*(L)`` as the free CDGA on the duals ``u_x`` of ``sx`` (``|u_x| = |x| + 1``).

    The differential is the transpose of ``d_v + d_h`` restricted to word
    lengths one and two; ``u_a u_b`` is dual to ``sx_a ∧ sx_b`` and ``u_a^2/2`` to
    ``sx_a ∧ sx_a``.
    """
    if cap is None:
        cap = L.cap
    if cap > L.cap:
        raise ModelError(f"cochains up to degree {cap} need the DGL cap >= {cap}")
    C = ChainCoalgebra(L, cap + 1)
    # generators one degree past the cap keep d complete on degree-cap generators
    ng = len(C.sgens)
    gens = [("u" + C.sname(j)[1:], C.degs[j]) for j in range(ng)]
    diff: dict = {}
    for n in range(2, C.cap + 1):
        for m in C.basis(n):
            if len(m) not in (1, 2):
                continue
            # coefficient of sx_b in d(m) contributes to d u_b
            dm = C.d_mono(m)
            for t, c in dm.items():
                if len(t) != 1:
                    continue
                b = t[0]
                if len(m) == 1:
                    mono, scale = m, ONE
                else:
                    mono = m
                    scale = Fraction(1, 2) if m[0] == m[1] else ONE
                vaddto(diff.setdefault(b, {}), {mono: ONE}, c * scale)
    A = FreeCDGA(gens, diff, cap=cap, check=False)
    A.chains = C
    A.validate()
    return A
