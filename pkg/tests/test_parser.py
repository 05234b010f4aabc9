from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mapspace.parser import (Attach, Block, InputError, ModelFile, Term, parse, parse_text, print_model,
                             to_cdga, to_dgl)

SAMPLE = """\
param cap 30;
# a comment
sullivan S6 { gen x 6; gen y 11; d x = 0; d y = x*x; }
sullivan T {
  gen a 5; gen b 6; gen c 7; gen e 17;
  d e = 2/3*a*b*c;
}
lie CP2 { gen i 1; gen w 3; d w = q*[i,i]; }
lie S2 { gen i 1; }
attach top : S2 cell 4 = -[i,i];
"""


def test_parse_sample():
    m = parse_text(SAMPLE)
    assert list(m.blocks) == ["S6", "T", "CP2", "S2"]
    assert m.params == {"cap": 30}
    assert m.blocks["T"].diffs["e"] == [Term(Fraction(2, 3), ("a", "b", "c"))]
    assert m.blocks["CP2"].diffs["w"] == [Term(Fraction(1), ("i", "i"), 1)]
    assert m.attaches["top"].cell == 4 and m.attaches["top"].terms[0].coef == -1


def test_round_trip_sample():
    m = parse_text(SAMPLE)
    text = print_model(m)
    assert parse_text(text) == m
    assert print_model(parse_text(text)) == text


def test_conversion_to_algebras():
    m = parse_text(SAMPLE)
    A = to_cdga(m.blocks["S6"])
    assert list(A.degs) == [6, 11] and A.d_gen[1] == {(0, 0): 1}
    L = to_dgl(m.blocks["CP2"], q=Fraction(3))
    assert list(L.degs) == [1, 3]
    with pytest.raises(InputError):
        to_cdga(m.blocks["CP2"])


def test_generators_in_any_order():
    m = parse_text("sullivan A { d y = x*x; gen y 3; gen x 2; }")
    assert m.blocks["A"].gens == [("y", 3), ("x", 2)]


@pytest.mark.parametrize("text,line,col,fragment", [
    ("sullivan A { gen x 2; d x = [x,x; }", 1, 29, "expected"),
    ("sullivan A { gen x 2;\n  d x = y*y; }", 2, 9, "undeclared name 'y'"),
    ("sullivan A { gen x 2; gen y 4;\n d y = x*x; }", 2, 8, "degree mismatch"),
    ("lie L { gen a 1; }\nattach e : L cell 5 = [a,a];", 2, 23, "degree mismatch"),
    ("sullivan A { gen x 2 }", 1, 22, "expected"),
    ("sullivan A { gen x 2; } @", 1, 25, "unexpected character"),
])
def test_error_positions(text, line, col, fragment):
    with pytest.raises(InputError) as ei:
        parse_text(text, source="f.model")
    e = ei.value
    assert fragment in str(e)
    assert (e.line, e.col) == (line, col)
    assert str(e).startswith(f"f.model:{line}:{col}: ")


def test_attach_to_missing_block():
    with pytest.raises(InputError, match="no lie block"):
        parse_text("attach e : Nope cell 4 = [a,a];")


def test_parse_missing_file(tmp_path):
    with pytest.raises(InputError, match="cannot read"):
        parse(tmp_path / "absent.model")


def test_parse_file_records_source(tmp_path):
    p = tmp_path / "m.model"
    p.write_text(SAMPLE)
    assert parse(p) == parse_text(SAMPLE)


# -- generated round trips ---------------------------------------------------------

coefs = st.fractions(min_value=-5, max_value=5, max_denominator=6).filter(bool)


@st.composite
def sullivan_blocks(draw, name):
    gens = [(f"x{i}", d) for i, d in enumerate(draw(st.lists(st.integers(2, 6), min_size=1, max_size=3)))]
    diffs = {}
    for j in range(draw(st.integers(0, 3))):
        factors = tuple(draw(st.lists(st.sampled_from([g for g, _ in gens]), min_size=2, max_size=3)))
        deg = sum(dict(gens)[f] for f in factors) - 1
        g = f"y{j}"
        gens.append((g, deg))
        diffs[g] = [Term(draw(coefs), factors)]
    return Block("sullivan", name, gens, diffs)


@st.composite
def lie_blocks(draw, name):
    gens = [(f"a{i}", d) for i, d in enumerate(draw(st.lists(st.integers(1, 3), min_size=1, max_size=3)))]
    diffs = {}
    for j in range(draw(st.integers(0, 2))):
        names = [g for g, _ in gens]
        u, v = draw(st.sampled_from(names)), draw(st.sampled_from(names))
        word = (u, v) if draw(st.booleans()) else (u, (u, v))
        flat = [u, v] if isinstance(word[1], str) else [u, u, v]
        deg = sum(dict(gens)[f] for f in flat) + 1
        g = f"w{j}"
        gens.append((g, deg))
        diffs[g] = [Term(draw(coefs), word, draw(st.integers(0, 1)))]
    return Block("lie", name, gens, diffs)


@st.composite
def model_files(draw):
    blocks = [draw(sullivan_blocks(f"S{i}")) for i in range(draw(st.integers(1, 2)))]
    blocks += [draw(lie_blocks(f"L{i}")) for i in range(draw(st.integers(0, 2)))]
    mf = ModelFile({b.name: b for b in blocks})
    lies = [b for b in blocks if b.kind == "lie"]
    if lies and draw(st.booleans()):
        g, d = lies[0].gens[0]
        mf.attaches["cell"] = Attach("cell", lies[0].name, 2 * d + 2, [Term(draw(coefs), (g, g))])
    if draw(st.booleans()):
        mf.params["cap"] = draw(st.integers(4, 60))
    return mf


@settings(max_examples=80, deadline=None)
@given(model_files())
def test_generated_round_trip(mf):
    text = print_model(mf)
    back = parse_text(text)
    assert back == mf
    assert print_model(back) == text
