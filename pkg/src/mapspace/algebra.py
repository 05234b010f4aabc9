"""Free graded-commutative algebras over Q and their differentials.

A monomial is a sorted tuple of generator indices (an even generator may repeat,
an odd one never does).  A polynomial is a dict ``monomial -> Fraction``.  All
signs come from the Koszul rule: swapping homogeneous ``x, y`` costs
``(-1)^(|x||y|)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .linalg import ONE, Echelon, kernel, vaddto, vscale

Mono = tuple
Poly = dict


class CapError(ValueError):
    """Raised when a question cannot be answered at the current degree cap."""


class ModelError(ValueError):
    """Raised for an invalid algebraic model (bad degrees, d^2 != 0, ...)."""


@dataclass(frozen=True)
class Generator:
    id: int
    name: str
    degree: int


# -- monomials ---------------------------------------------------------------


def normalize_monomial(factors: Sequence[int], degs: Sequence[int]):
    """Sort a product of generators.  Returns ``(sign, mono)``, or ``(0, None)``
    when an odd generator repeats."""
    f = list(factors)
    sign = 1
    # insertion sort, counting odd/odd transpositions
    for i in range(1, len(f)):
        j = i
        while j > 0 and f[j - 1] > f[j]:
            if degs[f[j - 1]] & 1 and degs[f[j]] & 1:
                sign = -sign
            f[j - 1], f[j] = f[j], f[j - 1]
            j -= 1
    for a, b in zip(f, f[1:]):
        if a == b and degs[a] & 1:
            return 0, None
    return sign, tuple(f)


def mono_mul(a: Mono, b: Mono, degs: Sequence[int]):
    if not a:
        return 1, b
    if not b:
        return 1, a
    sign = 1
    odd_b = [y for y in b if degs[y] & 1]
    if odd_b:
        for x in a:
            if degs[x] & 1:
                n = 0
                for y in odd_b:
                    if y < x:
                        n += 1
                    elif y == x:
                        return 0, None
                if n & 1:
                    sign = -sign
    return sign, tuple(sorted(a + b))


def mono_degree(m: Mono, degs: Sequence[int]) -> int:
    return sum(degs[i] for i in m)


# -- polynomials -------------------------------------------------------------


def poly_mul(p: Mapping, q: Mapping, degs: Sequence[int]) -> Poly:
    out: Poly = {}
    for ma, ca in p.items():
        for mb, cb in q.items():
            s, m = mono_mul(ma, mb, degs)
            if s:
                c = out.get(m, 0) + s * ca * cb
                if c:
                    out[m] = c
                else:
                    del out[m]
    return out


def poly_degrees(p: Mapping, degs: Sequence[int]) -> set:
    return {mono_degree(m, degs) for m in p}


def poly_degree(p: Mapping, degs: Sequence[int]):
    """Degree of a homogeneous polynomial (None for zero)."""
    ds = poly_degrees(p, degs)
    if not ds:
        return None
    if len(ds) > 1:
        raise ModelError(f"inhomogeneous polynomial (degrees {sorted(ds)})")
    return ds.pop()


def wordlength_components(p: Mapping) -> dict[int, Poly]:
    out: dict[int, Poly] = {}
    for m, c in p.items():
        out.setdefault(len(m), {})[m] = c
    return out


def check_derivation(values: Mapping[int, Mapping], r: int, degs: Sequence[int]) -> None:
    """Raise unless every value is homogeneous of degree ``|g| + r``."""
    for g, val in values.items():
        if not val:
            continue
        ds = poly_degrees(val, degs)
        if ds != {degs[g] + r}:
            raise ModelError(f"derivation value on generator {g} has degrees {sorted(ds)}, "
                             f"expected {degs[g] + r}")


def apply_derivation(values: Mapping[int, Mapping], r: int, p: Mapping, degs: Sequence[int]) -> Poly:
    """Extend ``values`` (generator -> polynomial, all of degree shift ``r``) to a
    derivation and apply it to ``p``.  Call :func:`check_derivation` first when
    the values come from outside."""
    out: Poly = {}
    odd_r = r & 1
    for m, c in p.items():
        pre_deg = 0
        for i, g in enumerate(m):
            val = values.get(g)
            if val:
                sign = -1 if (odd_r and pre_deg & 1) else 1
                prefix, suffix = m[:i], m[i + 1:]
                for vm, vc in val.items():
                    s1, t = mono_mul(prefix, vm, degs)
                    if not s1:
                        continue
                    s2, t = mono_mul(t, suffix, degs)
                    if not s2:
                        continue
                    k = c * vc * sign * s1 * s2
                    x = out.get(t, 0) + k
                    if x:
                        out[t] = x
                    else:
                        del out[t]
            pre_deg += degs[g]
    return out


@lru_cache(maxsize=None)
def _monomials(degs: tuple, start: int, n: int) -> tuple:
    """All monomials of degree ``n`` in generators ``start, start+1, ...``."""
    if n == 0:
        return ((),)
    out = []
    for i in range(start, len(degs)):
        d = degs[i]
        if d <= 0 or d > n:
            continue
        if d & 1:
            for rest in _monomials(degs, i + 1, n - d):
                out.append((i,) + rest)
        else:
            k = 1
            while k * d <= n:
                for rest in _monomials(degs, i + 1, n - k * d):
                    out.append((i,) * k + rest)
                k += 1
    return tuple(out)


def monomials(degs: Sequence[int], n: int) -> tuple:
    """Degree-``n`` monomial basis of the free algebra on generators of degrees
    ``degs`` (all positive)."""
    if n < 0:
        return ()
    return _monomials(tuple(degs), 0, n)


def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Mapping, names: Sequence[str]) -> str:
    if not p:
        return "0"
    parts = []
    for m in sorted(p, key=lambda m: (len(m), m)):
        c = p[m]
        sign = "-" if c < 0 else "+"
        a = abs(c)
        body = "*".join(names[i] for i in m)
        if not m:
            body = format_rational(a)
        elif a != 1:
            body = f"{format_rational(a)}*{body}"
        parts.append((sign, body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += f" {sign} {body}"
    return s


# -- free CDGAs --------------------------------------------------------------


class FreeCDGA:
    """Free graded-commutative algebra on positive-degree generators with a
    degree +1 differential given on generators.

    ``cap`` bounds every degreewise computation.  Construction checks that the
    differential raises degree by one and squares to zero on generators of
    degree <= cap - 1.
    """

    def __init__(self, generators: Sequence[tuple[str, int]] | Sequence[Generator],
                 differential: Mapping | None = None, cap: int | None = None,
                 check: bool = True):
        gens = []
        for i, g in enumerate(generators):
            if isinstance(g, Generator):
                name, deg = g.name, g.degree
            else:
                name, deg = g
            gens.append(Generator(i, str(name), int(deg)))
        self.generators: tuple[Generator, ...] = tuple(gens)
        self.degs: tuple[int, ...] = tuple(g.degree for g in gens)
        self.names: tuple[str, ...] = tuple(g.name for g in gens)
        self.index = {g.name: g.id for g in gens}
        if len(self.index) != len(gens):
            raise ModelError("duplicate generator names")
        for g in gens:
            if g.degree < 1:
                raise ModelError(f"generator {g.name} has degree {g.degree} < 1")
        diff: dict[int, Poly] = {}
        for k, v in (differential or {}).items():
            i = self._resolve(k)
            p = v.terms if isinstance(v, Polynomial) else v
            p = {tuple(m): Fraction(c) for m, c in p.items() if c}
            if p:
                diff[i] = p
        self.d_gen = diff
        if cap is None:
            cap = 2 * max(self.degs, default=0) + 2
        self.cap = cap
        self._dcache: dict = {}
        self._cohom: dict = {}
        if check:
            self.validate()

    # -- basic structure --
    def _resolve(self, k) -> int:
        if isinstance(k, Generator):
            return k.id
        if isinstance(k, str):
            return self.index[k]
        return int(k)

    def __len__(self) -> int:
        return len(self.generators)

    def __repr__(self) -> str:
        gens = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"FreeCDGA({gens}; cap={self.cap})"

    def gen(self, name) -> "Polynomial":
        return Polynomial(self, {(self._resolve(name),): ONE})

    def element(self, p: Mapping) -> "Polynomial":
        return Polynomial(self, p)

    def one(self) -> "Polynomial":
        return Polynomial(self, {(): ONE})

    def mul(self, p: Mapping, q: Mapping) -> Poly:
        return poly_mul(p, q, self.degs)

    def degree(self, p: Mapping):
        return poly_degree(p, self.degs)

    def basis(self, n: int) -> tuple:
        return monomials(self.degs, n)

    def format(self, p: Mapping) -> str:
        return format_poly(p, self.names)

    # -- differential --
    def d(self, p: Mapping) -> Poly:
        if len(p) == 1:
            (m, c), = p.items()
            return vscale(self.d_mono(m), c)
        out: Poly = {}
        for m, c in p.items():
            vaddto(out, self.d_mono(m), c)
        return out

    def d_mono(self, m: Mono) -> Poly:
        r = self._dcache.get(m)
        if r is None:
            r = apply_derivation(self.d_gen, 1, {m: ONE}, self.degs)
            self._dcache[m] = r
        return r

    def is_zero_differential(self) -> bool:
        return not self.d_gen

    def validate(self) -> None:
        for i, p in self.d_gen.items():
            for m in p:
                if any(j < 0 or j >= len(self.degs) for j in m):
                    raise ModelError(f"d{self.names[i]} uses an undeclared generator")
            deg = self.degree(p)
            if deg is not None and deg != self.degs[i] + 1:
                raise ModelError(
                    f"d{self.names[i]} has degree {deg}, expected {self.degs[i] + 1}")
        for i in range(len(self.degs)):
            if self.degs[i] <= self.cap - 1 and i in self.d_gen:
                dd = self.d(self.d_gen[i])
                if dd:
                    raise ModelError(f"d^2 {self.names[i]} = {self.format(dd)} != 0")

    def linear_part_zero(self) -> bool:
        return all(len(m) != 1 for p in self.d_gen.values() for m in p)

    def wordlength_decompose(self, v) -> list[Poly]:
        """Components of ``dv`` by wordlength: entry ``i`` is ``d_i v``, the part of
        wordlength ``i + 1`` (entry 0 is the linear part)."""
        p = self.d_gen.get(self._resolve(v), {})
        comps = wordlength_components(p)
        top = max(comps, default=1)
        return [comps.get(i + 1, {}) for i in range(top)]

    # -- cohomology --
    def cohomology(self, n: int) -> "CohomologyGroup":
        if n > self.cap - 1:
            raise CapError(f"H^{n} needs cap > {n} (cap is {self.cap})")
        g = self._cohom.get(n)
        if g is None:
            g = CohomologyGroup(self, n)
            self._cohom[n] = g
        return g

    def betti(self, upto: int | None = None) -> list[int]:
        top = self.cap - 1 if upto is None else upto
        return [self.cohomology(n).dim for n in range(top + 1)]

    def extend(self, generators: Sequence[tuple[str, int]], differential: Mapping,
               cap: int | None = None) -> "FreeCDGA":
        """A new algebra with extra generators appended (existing ids kept)."""
        gens = [(g.name, g.degree) for g in self.generators] + list(generators)
        diff = {i: p for i, p in self.d_gen.items()}
        for k, v in differential.items():
            j = k if isinstance(k, int) else [g[0] for g in gens].index(k)
            diff[j] = v.terms if isinstance(v, Polynomial) else v
        return FreeCDGA(gens, diff, cap=self.cap if cap is None else cap)


class CohomologyGroup:
    """``H^n`` of a free CDGA with chosen cocycle representatives."""

    def __init__(self, A: FreeCDGA, n: int):
        self.algebra = A
        self.degree = n
        basis = A.basis(n)
        self.basis = basis
        if A.is_zero_differential():
            self.reps = [{m: ONE} for m in basis]
            self._bd = Echelon(track=False)
        else:
            cols = [A.d_mono(m) for m in basis]
            ker = kernel(cols)
            cocycles = [{basis[i]: c for i, c in k.items()} for k in ker]
            bd = Echelon()
            for m in A.basis(n - 1) if n > 0 else ():
                bd.add(A.d_mono(m))
            self._bd = bd
            probe = Echelon()
            probe.rows = dict(bd.rows)
            self.reps = [z for z in cocycles if probe.add(z)[0]]
        self.dim = len(self.reps)
        self._coords = None

    def _coord_echelon(self) -> Echelon:
        if self._coords is None:
            e = Echelon(track=True)
            for i, row in enumerate(self._bd.rows.values()):
                e.add(row, ("b", i))
            for j, z in enumerate(self.reps):
                e.add(z, ("h", j))
            self._coords = e
        return self._coords

    def coords(self, cocycle: Mapping) -> list[Fraction]:
        """Coordinates of the class of ``cocycle`` over ``reps``."""
        x = self._coord_echelon().express(cocycle)
        if x is None:
            raise ValueError("not a cocycle of this degree")
        out = [Fraction(0)] * self.dim
        for tag, c in x.items():
            if tag[0] == "h":
                out[tag[1]] = c
        return out

    def is_coboundary(self, p: Mapping) -> bool:
        return self._bd.contains(p)


class Polynomial:
    """An element of a specific :class:`FreeCDGA` (immutable)."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: FreeCDGA, terms: Mapping):
        self.algebra = algebra
        self.terms = {tuple(m): Fraction(c) for m, c in terms.items() if c}

    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.algebra is not self.algebra:
                raise ModelError("operands belong to different algebras")
            return other.terms
        if isinstance(other, (int, Fraction)):
            return {(): Fraction(other)} if other else {}
        return NotImplemented

    def __add__(self, other):
        t = self._check(other)
        if t is NotImplemented:
            return t
        out = dict(self.terms)
        vaddto(out, t)
        return Polynomial(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.algebra, vscale(self.terms, -1))

    def __sub__(self, other):
        t = self._check(other)
        if t is NotImplemented:
            return t
        out = dict(self.terms)
        vaddto(out, t, -1)
        return Polynomial(self.algebra, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(self.algebra, vscale(self.terms, Fraction(other)))
        t = self._check(other)
        if t is NotImplemented:
            return t
        return Polynomial(self.algebra, self.algebra.mul(self.terms, t))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(): Fraction(other)} if other else {})
        return isinstance(other, Polynomial) and other.algebra is self.algebra and other.terms == self.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return self.algebra.format(self.terms)

    @property
    def degree(self):
        return self.algebra.degree(self.terms)

    def d(self) -> "Polynomial":
        return Polynomial(self.algebra, self.algebra.d(self.terms))
