"""Free graded Lie algebras, differential graded Lie algebras and their homology.

Elements of the free Lie algebra on ``W`` live inside the tensor algebra
``T(W)`` (``[x, y] = xy - (-1)^{|x||y|} yx``); a degreewise basis of right-normed
bracket words is picked greedily there, and every Lie element is stored by its
coordinates over that basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .algebra import CapError, ModelError, format_rational
from .linalg import ONE, Echelon, kernel, vaddto, vscale

# A bracket word is a generator index or a pair (left, right).
BracketWord = Union[int, tuple]


def word_degree(w: BracketWord, degs: Sequence[int]) -> int:
    if isinstance(w, int):
        return degs[w]
    return word_degree(w[0], degs) + word_degree(w[1], degs)


def word_length(w: BracketWord) -> int:
    """Number of leaves."""
    if isinstance(w, int):
        return 1
    return word_length(w[0]) + word_length(w[1])


def format_word(w: BracketWord, names: Sequence[str]) -> str:
    if isinstance(w, int):
        return names[w]
    return f"[{format_word(w[0], names)},{format_word(w[1], names)}]"


def tensor_mul(u: Mapping, v: Mapping) -> dict:
    out: dict = {}
    for a, x in u.items():
        for b, y in v.items():
            k = a + b
            z = out.get(k, 0) + x * y
            if z:
                out[k] = z
            else:
                del out[k]
    return out


def tensor_bracket(u: Mapping, du: int, v: Mapping, dv: int) -> dict:
    out = tensor_mul(u, v)
    vaddto(out, tensor_mul(v, u), -1 if (du * dv) % 2 == 0 else 1)
    return out


class FreeLieAlgebra:
    """The free graded Lie algebra on positive-degree generators, materialised
    degreewise up to ``cap``."""

    def __init__(self, generators: Sequence[tuple[str, int]], cap: int):
        self.names = tuple(str(g[0]) for g in generators)
        self.degs = tuple(int(g[1]) for g in generators)
        if any(d < 1 for d in self.degs):
            raise ModelError("Lie generators need degree >= 1")
        if len(set(self.names)) != len(self.names):
            raise ModelError("duplicate Lie generator names")
        self.index = {n: i for i, n in enumerate(self.names)}
        self.cap = cap
        self._words: dict[int, list] = {}
        self._tensors: dict[int, list] = {}
        self._ech: dict[int, Echelon] = {}

    def __repr__(self):
        gens = ", ".join(f"{n}:{d}" for n, d in zip(self.names, self.degs))
        return f"FreeLieAlgebra({gens}; cap={self.cap})"

    def _build(self, n: int) -> None:
        if n in self._words:
            return
        if n > self.cap:
            raise CapError(f"Lie degree {n} exceeds cap {self.cap}")
        words, tens = [], []
        ech = Echelon(track=True)
        cands = []
        for g, d in enumerate(self.degs):
            if d == n:
                cands.append((g, {(g,): ONE}))
        for g, d in enumerate(self.degs):
            m = n - d
            if m >= 1:
                self._build(m)
                for b, t in zip(self._words[m], self._tensors[m]):
                    cands.append(((g, b), tensor_bracket({(g,): ONE}, d, t, m)))
        for w, t in cands:
            if t and ech.add(t, len(words))[0]:
                words.append(w)
                tens.append(t)
        self._words[n], self._tensors[n], self._ech[n] = words, tens, ech

    def basis(self, n: int) -> list:
        """Ordered basis of bracket words in degree ``n``."""
        if n < 1:
            return []
        self._build(n)
        return self._words[n]

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def tensor_of_basis(self, n: int, i: int) -> dict:
        self._build(n)
        return self._tensors[n][i]

    def tensor(self, w: BracketWord) -> dict:
        if isinstance(w, int):
            return {(w,): ONE}
        a, b = w
        return tensor_bracket(self.tensor(a), word_degree(a, self.degs),
                              self.tensor(b), word_degree(b, self.degs))

    def coords(self, t: Mapping, n: int) -> dict:
        """Coordinates of a degree-``n`` tensor over the Lie basis."""
        if not t:
            return {}
        self._build(n)
        x = self._ech[n].express(t)
        if x is None:
            raise ModelError("tensor is not a Lie element")
        return x

    # -- element construction --
    def zero(self, n: int) -> "LieElement":
        return LieElement(self, n, {})

    def gen(self, name) -> "LieElement":
        g = self.index[name] if isinstance(name, str) else int(name)
        return self.normalize(g)

    def from_tensor(self, t: Mapping, n: int) -> "LieElement":
        return LieElement(self, n, self.coords(t, n))

    def basis_element(self, n: int, i: int) -> "LieElement":
        return LieElement(self, n, {i: ONE})

    def normalize(self, expr) -> "LieElement":
        """Rewrite a bracket word, or a dict ``word -> coefficient``, in the basis."""
        if not isinstance(expr, Mapping):
            expr = {expr: ONE}
        t: dict = {}
        deg = None
        for w, c in expr.items():
            d = word_degree(w, self.degs)
            if deg is None:
                deg = d
            elif d != deg:
                raise ModelError("inhomogeneous Lie expression")
            vaddto(t, self.tensor(w), Fraction(c))
        if deg is None:
            raise ModelError("empty Lie expression has no degree; use zero(n)")
        return self.from_tensor(t, deg)

    def bracket(self, x: "LieElement", y: "LieElement") -> "LieElement":
        n = x.degree + y.degree
        return self.from_tensor(tensor_bracket(x.tensor(), x.degree, y.tensor(), y.degree), n)

    def format(self, n: int, coords: Mapping) -> str:
        if not coords:
            return "0"
        words = self.basis(n)
        parts = []
        for i in sorted(coords):
            c = coords[i]
            w = format_word(words[i], self.names)
            a = abs(c)
            body = w if a == 1 else f"{format_rational(a)}*{w}"
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sg, body in parts[1:]:
            s += f" {sg} {body}"
        return s


class LieElement:
    """Homogeneous element of a free Lie algebra, in basis coordinates."""

    __slots__ = ("algebra", "degree", "coords")

    def __init__(self, algebra: FreeLieAlgebra, degree: int, coords: Mapping):
        self.algebra = algebra
        self.degree = degree
        self.coords = {int(i): Fraction(c) for i, c in coords.items() if c}

    def tensor(self) -> dict:
        out: dict = {}
        for i, c in self.coords.items():
            vaddto(out, self.algebra.tensor_of_basis(self.degree, i), c)
        return out

    def _same(self, other: "LieElement"):
        if other.algebra is not self.algebra:
            raise ModelError("Lie elements from different algebras")
        if other.degree != self.degree and other.coords and self.coords:
            raise ModelError("adding Lie elements of different degrees")

    def __add__(self, other):
        self._same(other)
        out = dict(self.coords)
        vaddto(out, other.coords)
        return LieElement(self.algebra, self.degree if self.coords else other.degree, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LieElement(self.algebra, self.degree, vscale(self.coords, -1))

    def __mul__(self, c):
        return LieElement(self.algebra, self.degree, vscale(self.coords, Fraction(c)))

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, LieElement) and other.algebra is self.algebra
                and other.coords == self.coords and (not self.coords or other.degree == self.degree))

    def __hash__(self):
        return hash((self.degree, frozenset(self.coords.items())))

    def __bool__(self):
        return bool(self.coords)

    def __repr__(self):
        return self.algebra.format(self.degree, self.coords)

    def bracket(self, other: "LieElement") -> "LieElement":
        return self.algebra.bracket(self, other)


# -- differential graded Lie algebras ----------------------------------------


@dataclass
class DGLReport:
    valid: bool
    minimal: bool
    problems: list = field(default_factory=list)
    nonminimal_generators: list = field(default_factory=list)


class FreeDGL:
    """A free DGL ``(L_W, d)``: degree -1 differential given on generators."""

    def __init__(self, generators: Sequence[tuple[str, int]], differential: Mapping | None = None,
                 cap: int | None = None, check: bool = True):
        if cap is None:
            cap = 2 * (max((g[1] for g in generators), default=0) + 1) + 2
        self.lie = FreeLieAlgebra(generators, cap)
        self.cap = cap
        self.d_gen: dict[int, dict] = {}
        for k, v in (differential or {}).items():
            g = self.lie.index[k] if isinstance(k, str) else int(k)
            if isinstance(v, LieElement):
                t = v.tensor()
            elif isinstance(v, Mapping):
                t = {}
                for w, c in v.items():
                    vaddto(t, self.lie.tensor(w), Fraction(c))
            else:
                t = self.lie.tensor(v)
            if t:
                self.d_gen[g] = t
        self._dcache: dict = {}
        self._hcache: dict = {}
        if check:
            rep = self.check()
            if not rep.valid:
                raise ModelError("; ".join(rep.problems))

    @property
    def names(self):
        return self.lie.names

    @property
    def degs(self):
        return self.lie.degs

    def __repr__(self):
        return f"FreeDGL({self.lie!r}, d on {len(self.d_gen)} generators)"

    def top_degree(self) -> int:
        return max(self.degs, default=0)

    def dim_x(self) -> int:
        """Dimension of the modelled complex: one more than the top generator degree."""
        return self.top_degree() + 1 if self.degs else 0

    def d_tensor(self, t: Mapping) -> dict:
        out: dict = {}
        degs = self.degs
        for w, c in t.items():
            pre = 0
            for i, g in enumerate(w):
                dg = self.d_gen.get(g)
                if dg:
                    s = -c if pre & 1 else c
                    left, right = w[:i], w[i + 1:]
                    for u, x in dg.items():
                        k = left + u + right
                        z = out.get(k, 0) + s * x
                        if z:
                            out[k] = z
                        else:
                            del out[k]
                pre += degs[g]
        return out

    def d_basis(self, n: int, i: int) -> dict:
        """``d`` of basis element ``i`` of degree ``n``, in degree-``n-1`` coordinates."""
        key = (n, i)
        r = self._dcache.get(key)
        if r is None:
            t = self.d_tensor(self.lie.tensor_of_basis(n, i))
            r = self.lie.coords(t, n - 1) if t else {}
            self._dcache[key] = r
        return r

    def d(self, x: LieElement) -> LieElement:
        out: dict = {}
        for i, c in x.coords.items():
            vaddto(out, self.d_basis(x.degree, i), c)
        return LieElement(self.lie, x.degree - 1, out)

    def check(self) -> DGLReport:
        rep = DGLReport(True, True)
        for g, t in self.d_gen.items():
            name = self.names[g]
            lens = {len(w) for w in t}
            degs = {sum(self.degs[a] for a in w) for w in t}
            if degs != {self.degs[g] - 1}:
                rep.valid = False
                rep.problems.append(f"d{name} has degree {sorted(degs)}, expected {self.degs[g] - 1}")
                continue
            try:
                self.lie.coords(t, self.degs[g] - 1)
            except ModelError:
                rep.valid = False
                rep.problems.append(f"d{name} is not a Lie element")
                continue
            if 1 in lens:
                rep.minimal = False
                rep.nonminimal_generators.append(name)
            if self.degs[g] - 1 <= self.cap:
                dd = self.d_tensor(t)
                if dd:
                    rep.valid = False
                    rep.problems.append(f"d^2 {name} != 0")
        return rep

    def is_cycle(self, x: LieElement) -> bool:
        return not self.d(x)

    # -- homology --
    def homology(self, n: int) -> "LieHomology":
        if n > self.cap - 1:
            raise CapError(f"H_{n} of the DGL needs cap > {n}")
        h = self._hcache.get(n)
        if h is None:
            h = LieHomology(self, n)
            self._hcache[n] = h
        return h

    def homology_lie_algebra(self, top: int) -> "GradedLieAlgebra":
        """``H(L)`` in degrees ``1..top`` with the induced bracket."""
        groups = {n: self.homology(n) for n in range(1, top + 1)}
        dims = {n: g.dim for n, g in groups.items()}
        names = {n: [self.lie.format(n, r) for r in g.reps] for n, g in groups.items()}

        def br(a, i, b, j):
            if a + b > top:
                return None
            x = LieElement(self.lie, a, groups[a].reps[i])
            y = LieElement(self.lie, b, groups[b].reps[j])
            z = self.lie.bracket(x, y)
            cs = groups[a + b].coords(z.coords)
            return {(a + b, k): c for k, c in enumerate(cs) if c}

        return GradedLieAlgebra(dims, br, names=names, top=top)

    def adjoin_cell(self, name: str, z: LieElement, k: int | None = None) -> "FreeDGL":
        """Lie model of the adjunction space: a new generator of degree ``k`` whose
        differential is the cycle ``z`` (of degree ``k - 1``)."""
        if k is None:
            k = z.degree + 1
        if z.coords and z.degree != k - 1:
            raise ModelError(f"attaching cycle has degree {z.degree}, expected {k - 1}")
        if z.coords and self.d(z):
            raise ModelError("attaching element is not a cycle")
        gens = list(zip(self.names, self.degs)) + [(name, k)]
        cap = max(self.cap, 2 * (k + 1) + 2)
        L = FreeDGL(gens, {}, cap=cap, check=False)
        for g, t in self.d_gen.items():
            L.d_gen[g] = dict(t)
        if z.coords:
            L.d_gen[len(gens) - 1] = z.tensor()
        rep = L.check()
        if not rep.valid:
            raise ModelError("; ".join(rep.problems))
        return L

    def element(self, expr) -> LieElement:
        return self.lie.normalize(expr)


def lie_basis(lie: FreeLieAlgebra, n: int) -> list:
    """Ordered basis of bracket words of the free Lie algebra in degree ``n``."""
    if n > lie.cap:
        raise CapError(f"degree {n} is beyond cap {lie.cap}")
    return lie.basis(n)


def dgl_homology(L: FreeDGL, n: int) -> tuple[int, list, "GradedLieAlgebra"]:
    """``(dim H_n, cycle representatives, H(L) up to degree n with its bracket)``."""
    H = L.homology(n)
    reps = [LieElement(L.lie, n, dict(r)) for r in H.reps]
    return H.dim, reps, L.homology_lie_algebra(n)


def lie_model_adjunction(L: FreeDGL, z: LieElement, k: int, name: str = "w") -> FreeDGL:
    return L.adjoin_cell(name, z, k)


def dgl_check(L: FreeDGL) -> DGLReport:
    return L.check()


class LieHomology:
    """``H_n`` of a free DGL with chosen cycle representatives."""

    def __init__(self, L: FreeDGL, n: int):
        self.dgl = L
        self.degree = n
        dim = L.lie.dim(n)
        cols = [L.d_basis(n, i) for i in range(dim)]
        cycles = kernel(cols) if n > 1 else [{i: ONE} for i in range(dim)]
        bd = Echelon()
        for i in range(L.lie.dim(n + 1)):
            bd.add(L.d_basis(n + 1, i))
        probe = Echelon()
        probe.rows = dict(bd.rows)
        self.reps = [z for z in cycles if probe.add(z)[0]]
        self.boundaries = bd
        self.dim = len(self.reps)
        e = Echelon(track=True)
        for i, row in enumerate(bd.rows.values()):
            e.add(row, ("b", i))
        for j, z in enumerate(self.reps):
            e.add(z, ("h", j))
        self._coords = e

    def coords(self, cycle: Mapping) -> list[Fraction]:
        x = self._coords.express(cycle)
        if x is None:
            raise ModelError("not a cycle")
        out = [Fraction(0)] * self.dim
        for tag, c in x.items():
            if tag[0] == "h":
                out[tag[1]] = c
        return out


# -- finite-type graded Lie algebras -----------------------------------------


class GradedLieAlgebra:
    """A graded Lie algebra, finite-dimensional in each degree ``1..top``.

    Elements are dicts keyed by ``(degree, index)``.  ``bracket_fn(a, i, b, j)``
    returns the bracket of basis elements as such a dict (or None when the result
    lies above ``top``).
    """

    def __init__(self, dims: Mapping[int, int], bracket_fn, names=None, top: int | None = None):
        self.dims = {int(n): int(k) for n, k in dims.items() if k}
        self.top = top if top is not None else max(self.dims, default=0)
        self._fn = bracket_fn
        self._table: dict = {}
        self.names = names or {}

    def degrees(self):
        return sorted(n for n in self.dims if n <= self.top)

    def basis(self, n: int) -> list:
        return [(n, i) for i in range(self.dims.get(n, 0))]

    def bracket_basis(self, a: int, i: int, b: int, j: int) -> dict:
        key = (a, i, b, j)
        r = self._table.get(key)
        if r is None:
            r = self._fn(a, i, b, j) or {}
            self._table[key] = r
        return r

    def bracket(self, x: Mapping, y: Mapping) -> dict:
        out: dict = {}
        for (a, i), c in x.items():
            for (b, j), e in y.items():
                if a + b > self.top:
                    continue
                vaddto(out, self.bracket_basis(a, i, b, j), c * e)
        return out

    def is_abelian(self) -> bool:
        return all(not self.bracket({x: ONE}, {y: ONE})
                   for a in self.degrees() for b in self.degrees() if a + b <= self.top
                   for x in self.basis(a) for y in self.basis(b))

    def check_identities(self) -> list[str]:
        """Graded antisymmetry and Jacobi on all basis pairs/triples within ``top``."""
        errs = []
        ds = self.degrees()
        for a in ds:
            for b in ds:
                if a + b > self.top:
                    continue
                for x in self.basis(a):
                    for y in self.basis(b):
                        s = self.bracket({x: ONE}, {y: ONE})
                        t = self.bracket({y: ONE}, {x: ONE})
                        vaddto(s, t, 1 if (a * b) % 2 == 0 else -1)
                        if s:
                            errs.append(f"antisymmetry fails on {x},{y}")
        for a in ds:
            for b in ds:
                for c in ds:
                    if a + b + c > self.top:
                        continue
                    for x in self.basis(a):
                        for y in self.basis(b):
                            for z in self.basis(c):
                                X, Y, Z = {x: ONE}, {y: ONE}, {z: ONE}
                                # [x,[y,z]] = [[x,y],z] + (-1)^{ab} [y,[x,z]]
                                lhs = self.bracket(X, self.bracket(Y, Z))
                                vaddto(lhs, self.bracket(self.bracket(X, Y), Z), -1)
                                vaddto(lhs, self.bracket(Y, self.bracket(X, Z)),
                                       -1 if (a * b) % 2 == 0 else 1)
                                if lhs:
                                    errs.append(f"Jacobi fails on {x},{y},{z}")
        return errs

    def lower_central_series(self, n: int, d: int) -> list[dict]:
        """Basis (echelon rows) of ``[G,G]^{(n)}`` in degree ``d``."""
        return list(self._lcs(n, d).rows.values())

    def _lcs(self, n: int, d: int) -> Echelon:
        cache = self.__dict__.setdefault("_lcs_cache", {})
        key = (n, d)
        if key in cache:
            return cache[key]
        e = Echelon()
        if n == 0:
            for x in self.basis(d):
                e.add({x: ONE})
        else:
            for a in self.degrees():
                if a >= d:
                    break
                inner = self._lcs(n - 1, d - a)
                if not len(inner):
                    continue
                for x in self.basis(a):
                    for row in inner.rows.values():
                        e.add(self.bracket({x: ONE}, row))
        cache[key] = e
        return e

    def in_lcs(self, x: Mapping, n: int) -> bool:
        if not x:
            return True
        d = next(iter(x))[0]
        return self._lcs(n, d).contains(x)

    def bracket_length(self, x: Mapping):
        """Greatest ``n`` with ``x`` in ``[G,G]^{(n)}``; ``math.inf`` for ``x = 0``."""
        if not x:
            return math.inf
        degs = {k[0] for k in x}
        if len(degs) != 1:
            raise ModelError("bracket length needs a homogeneous element")
        d = degs.pop()
        n = 0
        while n + 1 < d + 1 and self.in_lcs(x, n + 1):
            n += 1
        return n

    def whitehead_length(self) -> int:
        """Greatest ``n`` with ``[G,G]^{(n)}`` nonzero in some degree ``<= top``."""
        best = 0
        for d in self.degrees():
            n = best + 1
            while n < d and len(self._lcs(n, d)):
                best = max(best, n)
                n += 1
        return best

    def indecomposables(self, d: int) -> list[dict]:
        """Basis vectors complementing ``[G,G] ∩ G_d``."""
        e = Echelon()
        e.rows = dict(self._lcs(1, d).rows)
        return [{x: ONE} for x in self.basis(d) if e.add({x: ONE})[0]]
