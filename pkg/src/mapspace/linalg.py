"""Exact sparse linear algebra over the rationals.

Vectors are plain dicts ``key -> Fraction`` with no zero entries.  Keys must be
mutually comparable; elimination always pivots on the smallest key of a vector,
which makes every result deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

Vector = dict

ZERO = Fraction(0)
ONE = Fraction(1)


def vadd(u: Mapping, v: Mapping, c=ONE) -> dict:
    """Return ``u + c*v`` as a new vector."""
    out = dict(u)
    if not c:
        return out
    for k, x in v.items():
        y = out.get(k, ZERO) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vaddto(u: dict, v: Mapping, c=ONE) -> None:
    """In-place ``u += c*v``."""
    if not c:
        return
    for k, x in v.items():
        y = u.get(k, ZERO) + c * x
        if y:
            u[k] = y
        else:
            del u[k]


def vscale(v: Mapping, c) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vclean(v: Mapping) -> dict:
    return {k: Fraction(x) for k, x in v.items() if x}


class Echelon:
    """Incrementally built row-echelon basis of a subspace.

    Each stored row has a pivot (its smallest key) with coefficient 1, and no
    stored row contains a key smaller than its pivot.  With ``track=True`` every
    row also remembers which combination of the inserted vectors produced it,
    so dependencies among inserted vectors can be read off.
    """

    def __init__(self, track: bool = False):
        self.rows: dict = {}
        self.combos: dict = {}
        self.track = track

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping, combo: Mapping | None = None):
        r = dict(vec)
        c = dict(combo) if combo is not None else ({} if self.track else None)
        rows = self.rows
        while r:
            p = min(r)
            row = rows.get(p)
            if row is None:
                break
            f = -r[p]
            vaddto(r, row, f)
            if c is not None:
                vaddto(c, self.combos[p], f)
        return r, c

    def reduce_full(self, vec: Mapping) -> dict:
        """Reduce every key that is a pivot, not just the leading one."""
        r = dict(vec)
        rows = self.rows
        for p in sorted(k for k in r if k in rows):
            x = r.get(p)
            if x:
                vaddto(r, rows[p], -x)
        # a second pass is needed when a row re-introduced a later pivot
        while any(k in rows for k in r):
            p = min(k for k in r if k in rows)
            vaddto(r, rows[p], -r[p])
        return r

    def add(self, vec: Mapping, tag: Hashable | None = None):
        """Insert ``vec``.  Returns ``(independent, dependency)``.

        When tracking, ``dependency`` is the combination of inserted tags that
        vanishes (a kernel vector) if ``vec`` was dependent.
        """
        combo = {tag: ONE} if self.track else None
        r, c = self.reduce(vec, combo)
        if not r:
            return False, c
        p = min(r)
        inv = ONE / r[p]
        self.rows[p] = vscale(r, inv)
        if self.track:
            self.combos[p] = vscale(c, inv)
        return True, None

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)[0]

    def express(self, vec: Mapping):
        """Coefficients over inserted tags giving ``vec``; None if outside span."""
        if not self.track:
            raise ValueError("express() needs a tracking Echelon")
        r, c = self.reduce(vec, {})
        if r:
            return None
        return vscale(c, -ONE)


def rank(columns: Iterable[Mapping]) -> int:
    e = Echelon()
    for col in columns:
        e.add(col)
    return len(e)


def kernel(columns: Sequence[Mapping]) -> list[dict]:
    """Basis of ``{x : sum_i x_i columns[i] = 0}``, as dicts ``index -> coeff``."""
    e = Echelon(track=True)
    out = []
    for i, col in enumerate(columns):
        ok, dep = e.add(col, i)
        if not ok:
            out.append(dep)
    return out


def solve(columns: Sequence[Mapping], target: Mapping):
    """Some ``x`` with ``sum_i x_i columns[i] = target``, or None if inconsistent."""
    e = Echelon(track=True)
    for i, col in enumerate(columns):
        e.add(col, i)
    return e.express(target)


def solve_linear(columns: Sequence[Mapping], target: Mapping):
    """Alias of :func:`solve`; None signals an inconsistent system."""
    return solve(columns, target)


def independent_subset(vectors: Iterable[Mapping], start: Echelon | None = None) -> list[int]:
    """Indices of a greedy maximal independent subset (modulo ``start``'s span)."""
    e = start if start is not None else Echelon()
    chosen = []
    for i, v in enumerate(vectors):
        if e.add(v)[0]:
            chosen.append(i)
    return chosen


def matrix_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a dense matrix given as a list of rows."""
    cols = []
    ncols = len(rows[0]) if rows else 0
    for j in range(ncols):
        cols.append({i: Fraction(r[j]) for i, r in enumerate(rows) if r[j]})
    return rank(cols)
