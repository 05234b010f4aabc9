"""Reader and writer for the line-oriented model-description format.

A file holds named blocks and a few top-level declarations::

    # comments run to the end of the line
    param cap 24;
    param q 1;
    sullivan S6 { gen x 6; gen y 11; d x = 0; d y = x*x; }
    lie CP2 { gen i 1; gen w 3; d i = 0; d w = q*[i,i]; }
    attach top : CP2 cell 4 = [i,i];

Sullivan differentials are sums of ``RATIONAL [*] NAME (* NAME)*`` terms (or
``0``).  Lie differentials and attaching cycles are sums of rational multiples
of bracket words ``NAME | [word, word]``.  The symbol ``q`` may scale a Lie
term; it stands for the value of ``param q`` (default 1) unless overridden.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra import FreeCDGA, ModelError, normalize_monomial
from .lie import FreeDGL
from .linalg import vaddto


class InputError(ModelError):
    """A malformed or inconsistent model file; carries a source position when known."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None,
                 source: str | None = None):
        self.line, self.col, self.source = line, col, source
        where = ""
        if line is not None:
            where = f"{source + ':' if source else ''}{line}:{col}: "
        super().__init__(where + message)
        self.bare = message


# -- data model ------------------------------------------------------------------


@dataclass
class Term:
    """``coef * q^qpow * factors`` where factors is a monomial (Sullivan) or a
    single bracket word (Lie)."""

    coef: Fraction
    body: object
    qpow: int = 0


@dataclass
class Block:
    kind: str                       # "sullivan" or "lie"
    name: str
    gens: list = field(default_factory=list)          # [(name, degree)]
    diffs: dict = field(default_factory=dict)         # gen name -> [Term]
    positions: dict = field(default_factory=dict, compare=False, repr=False)

    def degree(self, gen: str) -> int:
        return dict(self.gens)[gen]


@dataclass
class Attach:
    name: str
    lie: str
    cell: int
    terms: list
    position: tuple = field(default=(None, None), compare=False, repr=False)


@dataclass
class ModelFile:
    blocks: dict = field(default_factory=dict)        # name -> Block, in file order
    attaches: dict = field(default_factory=dict)      # name -> Attach
    params: dict = field(default_factory=dict)        # "cap" -> int, "q" -> Fraction
    source: str | None = field(default=None, compare=False)

    def block(self, name: str, kind: str | None = None) -> Block:
        b = self.blocks.get(name)
        if b is None or (kind and b.kind != kind):
            what = f"{kind} block" if kind else "block"
            raise InputError(f"no {what} named {name!r} (have: {', '.join(self.blocks) or 'none'})")
        return b

    def of_kind(self, kind: str) -> list[Block]:
        return [b for b in self.blocks.values() if b.kind == kind]


# -- tokenizer -------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) | (?P<nl>\n) | (?P<comment>\#[^\n]*)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[{}\[\];=,:+\-*])
""", re.VERBOSE)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str, source: str | None) -> list[_Tok]:
    toks, line, start, pos = [], 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise InputError(f"unexpected character {text[pos]!r}", line, pos - start + 1, source)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            start = m.end()
        elif kind not in ("ws", "comment"):
            toks.append(_Tok(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - start + 1))
    return toks


class _Parser:
    def __init__(self, text: str, source: str | None):
        self.toks = _tokenize(text, source)
        self.i = 0
        self.source = source

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None) -> InputError:
        t = tok or self.tok
        return InputError(msg, t.line, t.col, self.source)

    def next(self) -> _Tok:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        if self.tok.text != text or self.tok.kind == "eof":
            got = self.tok.text or "end of file"
            raise self.error(f"expected {text!r}, got {got!r}")
        return self.next()

    def expect_kind(self, kind: str, what: str) -> _Tok:
        if self.tok.kind != kind:
            raise self.error(f"expected {what}, got {self.tok.text or 'end of file'!r}")
        return self.next()

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind != "eof":
            self.i += 1
            return True
        return False

    # -- grammar --
    def file(self) -> ModelFile:
        mf = ModelFile(source=self.source)
        while self.tok.kind != "eof":
            t = self.tok
            if t.text in ("sullivan", "lie"):
                b = self.block()
                if b.name in mf.blocks:
                    raise self.error(f"duplicate block name {b.name!r}", t)
                mf.blocks[b.name] = b
            elif t.text == "attach":
                a = self.attach()
                if a.name in mf.attaches:
                    raise self.error(f"duplicate attach name {a.name!r}", t)
                mf.attaches[a.name] = a
            elif t.text == "param":
                self.param(mf)
            else:
                raise self.error(f"expected 'sullivan', 'lie', 'attach' or 'param', got {t.text!r}")
        return mf

    def param(self, mf: ModelFile) -> None:
        self.expect("param")
        key = self.expect_kind("name", "parameter name")
        val = self.rational()
        self.expect(";")
        if key.text == "cap":
            if val.denominator != 1 or val < 1:
                raise self.error("cap must be a positive integer", key)
            mf.params["cap"] = int(val)
        elif key.text == "q":
            mf.params["q"] = val
        else:
            raise self.error(f"unknown parameter {key.text!r} (known: cap, q)", key)

    def rational(self) -> Fraction:
        neg = self.accept("-")
        t = self.expect_kind("num", "a number")
        v = Fraction(t.text)
        return -v if neg else v

    def block(self) -> Block:
        kind = self.next().text
        name = self.expect_kind("name", "a block name").text
        b = Block(kind, name)
        self.expect("{")
        while not self.accept("}"):
            t = self.tok
            if t.kind == "eof":
                raise self.error(f"unterminated block {name!r}")
            if t.text == "gen":
                self.next()
                g = self.expect_kind("name", "a generator name")
                deg = self.expect_kind("num", "a degree")
                if "/" in deg.text or int(deg.text) < 1:
                    raise self.error("degrees must be positive integers", deg)
                self.expect(";")
                if g.text in dict(b.gens):
                    raise self.error(f"generator {g.text!r} declared twice", g)
                b.gens.append((g.text, int(deg.text)))
                b.positions[g.text] = (g.line, g.col)
            elif t.text == "d":
                self.next()
                g = self.expect_kind("name", "a generator name")
                self.expect("=")
                terms = self.sullivan_expr() if kind == "sullivan" else self.lie_expr()
                self.expect(";")
                if g.text in b.diffs:
                    raise self.error(f"differential of {g.text!r} given twice", g)
                b.diffs[g.text] = terms
                b.positions["d " + g.text] = (g.line, g.col)
            else:
                raise self.error(f"expected 'gen', 'd' or '}}', got {t.text!r}")
        return b

    def attach(self) -> Attach:
        start = self.expect("attach")
        name = self.expect_kind("name", "an attach name").text
        self.expect(":")
        lie = self.expect_kind("name", "a lie block name").text
        self.expect("cell")
        cell = self.expect_kind("num", "a cell dimension")
        if "/" in cell.text or int(cell.text) < 2:
            raise self.error("cell dimension must be an integer >= 2", cell)
        self.expect("=")
        terms = self.lie_expr()
        self.expect(";")
        return Attach(name, lie, int(cell.text), terms, (start.line, start.col))

    def _sign(self, first: bool) -> int | None:
        if self.accept("+"):
            return 1
        if self.accept("-"):
            return -1
        return 1 if first else None

    def sullivan_expr(self) -> list[Term]:
        terms: list[Term] = []
        while True:
            sign = self._sign(not terms)
            if sign is None:
                return terms
            coef = Fraction(sign)
            factors: list[str] = []
            pos = self.tok
            if self.tok.kind == "num":
                coef *= Fraction(self.next().text)
                if self.tok.kind != "name" and not self.accept("*"):
                    if coef == 0 and not terms:
                        return []
                    raise self.error("constant terms are not allowed", pos)
            factors.append(self.expect_kind("name", "a generator name").text)
            while self.accept("*"):
                factors.append(self.expect_kind("name", "a generator name").text)
            terms.append(Term(coef, tuple(factors)))
            terms[-1].position = (pos.line, pos.col)

    def lie_expr(self) -> list[Term]:
        terms: list[Term] = []
        while True:
            sign = self._sign(not terms)
            if sign is None:
                return terms
            coef = Fraction(sign)
            qpow = 0
            pos = self.tok
            if self.tok.kind == "num":
                coef *= Fraction(self.next().text)
                if coef == 0 and not terms and self.tok.text in (";", "eof"):
                    return []
                self.accept("*")
            if self.tok.text == "q" and self.toks[self.i + 1].text == "*":
                self.i += 2
                qpow = 1
            word = self.word()
            t = Term(coef, word, qpow)
            t.position = (pos.line, pos.col)
            terms.append(t)

    def word(self):
        if self.accept("["):
            a = self.word()
            self.expect(",")
            b = self.word()
            self.expect("]")
            return (a, b)
        t = self.expect_kind("name", "a generator name or '['")
        return _Name(t.text, t.line, t.col)


class _Name(str):
    """A generator name remembering where it was written."""

    def __new__(cls, s: str, line: int = 0, col: int = 0):
        obj = super().__new__(cls, s)
        obj.line, obj.col = line, col
        return obj


# -- checking ----------------------------------------------------------------------


def _word_names(w):
    if isinstance(w, str):
        yield w
    else:
        yield from _word_names(w[0])
        yield from _word_names(w[1])


def _word_degree(w, degs: dict) -> int:
    if isinstance(w, str):
        return degs[w]
    return _word_degree(w[0], degs) + _word_degree(w[1], degs)


def _check_terms(terms, degs: dict, expected: int, what: str, kind: str, source, pos) -> None:
    for t in terms:
        names = t.body if kind == "sullivan" else list(_word_names(t.body))
        for n in names:
            if n not in degs:
                line, col = getattr(n, "line", None), getattr(n, "col", None)
                if not line:
                    line, col = getattr(t, "position", pos)
                raise InputError(f"undeclared name {str(n)!r} in {what}", line, col, source)
        got = sum(degs[n] for n in names) if kind == "sullivan" else _word_degree(t.body, degs)
        if got != expected:
            line, col = getattr(t, "position", pos)
            raise InputError(f"degree mismatch in {what}: term {format_term(t, kind, True)!r} has "
                             f"degree {got}, expected {expected}", line, col, source)


def check(mf: ModelFile) -> ModelFile:
    """Raise InputError on undeclared names or degree inconsistencies."""
    for b in mf.blocks.values():
        degs = dict(b.gens)
        for g, terms in b.diffs.items():
            pos = b.positions.get("d " + g, (None, None))
            if g not in degs:
                raise InputError(f"differential of undeclared generator {g!r} in {b.name}",
                                 *pos, mf.source)
            expected = degs[g] + 1 if b.kind == "sullivan" else degs[g] - 1
            _check_terms(terms, degs, expected, f"d {g}", b.kind, mf.source, pos)
    for a in mf.attaches.values():
        if a.lie not in mf.blocks or mf.blocks[a.lie].kind != "lie":
            raise InputError(f"attach {a.name}: no lie block named {a.lie!r}", *a.position, mf.source)
        degs = dict(mf.blocks[a.lie].gens)
        _check_terms(a.terms, degs, a.cell - 2, f"attach {a.name}", "lie", mf.source, a.position)
    return mf


def parse_text(text: str, source: str | None = None) -> ModelFile:
    return check(_Parser(text, source).file())


def parse(path) -> ModelFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read {p}: {e.strerror or e}") from e
    return parse_text(text, str(p))


# -- printing ----------------------------------------------------------------------


def _fmt_word(w) -> str:
    if isinstance(w, str):
        return str(w)
    return f"[{_fmt_word(w[0])},{_fmt_word(w[1])}]"


def format_term(t: Term, kind: str, first: bool) -> str:
    c = t.coef
    sign = "-" if c < 0 else ("" if first else "+")
    a = abs(c)
    parts = [] if a == 1 else [str(a)]
    if t.qpow:
        parts.append("q")
    parts.append("*".join(t.body) if kind == "sullivan" else _fmt_word(t.body))
    return sign + "*".join(parts)


def format_expr(terms, kind: str) -> str:
    if not terms:
        return "0"
    out = format_term(terms[0], kind, True)
    for t in terms[1:]:
        s = format_term(t, kind, False)
        out += f" {s[0]} {s[1:]}"
    return out


def print_model(mf: ModelFile) -> str:
    """Canonical text of a model file; ``parse_text(print_model(m)) == m``."""
    lines = []
    for k in ("cap", "q"):
        if k in mf.params:
            lines.append(f"param {k} {mf.params[k]};")
    for b in mf.blocks.values():
        lines.append(f"{b.kind} {b.name} {{")
        for g, d in b.gens:
            lines.append(f"  gen {g} {d};")
        for g, terms in b.diffs.items():
            lines.append(f"  d {g} = {format_expr(terms, b.kind)};")
        lines.append("}")
    for a in mf.attaches.values():
        lines.append(f"attach {a.name} : {a.lie} cell {a.cell} = {format_expr(a.terms, 'lie')};")
    return "\n".join(lines) + "\n"


# -- conversion --------------------------------------------------------------------


def to_cdga(b: Block, cap: int | None = None, check: bool = True) -> FreeCDGA:
    if b.kind != "sullivan":
        raise InputError(f"{b.name} is a {b.kind} block, expected sullivan")
    index = {g: i for i, (g, _) in enumerate(b.gens)}
    degs = [d for _, d in b.gens]
    diff = {}
    for g, terms in b.diffs.items():
        p: dict = {}
        for t in terms:
            s, m = normalize_monomial(tuple(index[n] for n in t.body), degs)
            if s:
                vaddto(p, {m: Fraction(1)}, s * t.coef)
        if p:
            diff[g] = p
    try:
        return FreeCDGA(b.gens, diff, cap=cap, check=check)
    except ModelError as e:
        raise InputError(f"sullivan {b.name}: {e}") from e


def _ids(w, index):
    return index[w] if isinstance(w, str) else (_ids(w[0], index), _ids(w[1], index))


def lie_terms(terms, index: dict, q: Fraction = Fraction(1)) -> dict:
    """Bracket-word dictionary (generator ids) for a parsed Lie expression."""
    out: dict = {}
    for t in terms:
        w = _ids(t.body, index)
        out[w] = out.get(w, 0) + t.coef * q ** t.qpow
    return {w: c for w, c in out.items() if c}


def to_dgl(b: Block, q: Fraction = Fraction(1), cap: int | None = None, check: bool = True) -> FreeDGL:
    if b.kind != "lie":
        raise InputError(f"{b.name} is a {b.kind} block, expected lie")
    index = {g: i for i, (g, _) in enumerate(b.gens)}
    diff = {g: lie_terms(terms, index, q) for g, terms in b.diffs.items()}
    try:
        return FreeDGL(b.gens, {g: t for g, t in diff.items() if t}, cap=cap, check=check)
    except ModelError as e:
        raise InputError(f"lie {b.name}: {e}") from e
