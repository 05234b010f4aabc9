"""Built-in fixture suite: reference computations with known answers, the
oracle-equivalence checks, structural property checks, and a mutation test
showing that a corrupted sign convention is caught."""

from __future__ import annotations

import random
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import chains, mapping
from .algebra import ModelError
from .chains import ChainCoalgebra, dual_cochains, rho_reduction
from .fixtures import (cayley_model, cpn_lie, cpn_model, depth_two_model, random_minimal_model,
                       sphere_lie, sphere_model, triple_product_model, two_cp2_with_cell, wedge_lie)
from .invariants import cup_length, d1_depth, d_length, kotani_free_test, whitehead_length
from .mapping import ConsistencyError, mapping_space_model
from .parser import parse_text, print_model
from .properties import (cdga_d_squared_failures, leibniz_failures, lie_identity_failures,
                         primitive_vanishing_failures, structure_lemma_failures)
from .splitting import HYPOTHESIS_FAILS, SPLITS, decompose, nonfree_witness, splitting_check

FIXTURE_TEXT = """\
# reference models used by the self-test
sullivan S6 { gen x 6; gen y 11; d x = 0; d y = x*x; }
sullivan Y { gen x1 5; gen x2 6; gen x3 7; gen y 17; d y = x1*x2*x3; }
lie S2 { gen i 1; }
lie CP2 { gen i 1; gen w 3; d i = 0; d w = q*[i,i]; }
attach square : S2 cell 4 = q*[i,i];
lie W { gen a 1; gen b 1; gen c 4; d c = 1/2*[a,[a,b]] - [b,[b,a]]; }
"""


class Failure(Exception):
    pass


def expect(cond: bool, msg: str) -> None:
    if not cond:
        raise Failure(msg)


@dataclass
class Fixture:
    name: str
    run: Callable          # cap -> detail string; raises Failure
    default_cap: int | None = None
    min_cap: int | None = None


@dataclass
class Outcome:
    name: str
    outcome: str           # pass | fail | skip
    detail: str


def sullivan_fixtures() -> dict:
    out = {f"S{n}": sphere_model(n) for n in range(2, 9)}
    out.update({f"CP{n}": cpn_model(n) for n in range(2, 5)})
    out["triple-product"] = triple_product_model()
    out["depth-two"] = depth_two_model()
    return out


def lie_fixtures() -> dict:
    out = {f"S{n}": sphere_lie(n) for n in (2, 3, 5)}
    out.update({f"CP{n}": cpn_lie(n) for n in (2, 3, 4)})
    out["CP2vCP2+e4"] = two_cp2_with_cell()
    out["S2vS3"] = wedge_lie([2, 3])
    return out


# -- reference computations -------------------------------------------------------------


def fx_cp2_s6_model(cap: int) -> str:
    mm = mapping_space_model(cpn_lie(2), sphere_model(6), cap=cap)
    A = mm.minimal
    expect(sorted(A.degs) == [2, 4, 7, 9], f"minimal generator degrees {sorted(A.degs)}")
    v4 = A.degs.index(4)
    v7 = A.degs.index(7)
    want = {(v4, v4): Fraction(-2)}
    expect(A.d_gen.get(v7) == want, f"d v7 = {A.format(A.d_gen.get(v7, {}))}")
    expect(all(not p for g, p in A.d_gen.items() if g != v7), "unexpected nonzero differential")
    return "degrees 2,4,7,9; d v7 = -2 v4^2"


def fx_cp2_s6_split(cap: int) -> str:
    v = splitting_check(sphere_lie(2), {(0, 0): 1}, 3, sphere_model(6), cap=cap)
    expect(v.kind == HYPOTHESIS_FAILS, f"verdict {v.kind}")
    expect(v.bracket_length == 1 == v.whitehead_length == v.d1_depth,
           f"bl {v.bracket_length}, WL {v.whitehead_length}, depth {v.d1_depth}")
    expect(v.certificate is not None, "no non-splitting certificate")
    return f"HypothesisFails, certificate {v.certificate.kind} in degree {v.certificate.degree}"


def fx_cp2_triple_split(cap: int) -> str:
    v = splitting_check(sphere_lie(2), {(0, 0): 1}, 3, triple_product_model(), cap=cap)
    expect(v.kind == SPLITS, f"verdict {v.kind}: {v.reasons}")
    expect(v.witness.ok, "witness checks fail")
    return f"Splits; witness checked in degrees <= {cap - 1}"


def fx_two_cp2_cayley(cap: int) -> str:
    D = decompose(two_cp2_with_cell(), cayley_model(), cap=cap)
    expect(D.ok, f"decomposition fails: {D.failure}")
    ranks = {n: D.homotopy_rank(n) for n in range(1, 24) if D.homotopy_rank(n)}
    expect(ranks == {4: 3, 6: 2, 19: 3, 21: 2}, f"ranks {ranks}")
    return "ranks 3 in degrees 4, 19 and 2 in degrees 6, 21"


def fx_depth_equals_wl(cap: int | None) -> str:
    for name, M in sullivan_fixtures().items():
        a, b = d1_depth(M), whitehead_length(M)
        expect(a == b, f"{name}: depth {a} != WL {b}")
    rng = random.Random(20240531)
    for i in range(100):
        M = random_minimal_model(rng)
        a, b = d1_depth(M), whitehead_length(M)
        expect(a == b, f"random model {i}: depth {a} != WL {b}")
    return "fixtures and 100 random models agree"


def fx_chain_homology(cap: int | None) -> str:
    for name, L in lie_fixtures().items():
        C = ChainCoalgebra(L, L.cap + 1)
        r = rho_reduction(C, C.cap - 1)
        expect(r.quasi_isomorphism, f"{name}: ranks {r.chain_ranks} vs {r.target_ranks}")
    return f"{len(lie_fixtures())} Lie models"


def fx_loop_spaces(cap: int | None) -> str:
    n = 0
    for k in (1, 2, 3):
        for name, Y in sullivan_fixtures().items():
            if min(Y.degs) - 1 < k + 1:
                continue
            mm = mapping_space_model(sphere_lie(k + 1), Y, cap=cap or 2 * max(Y.degs) + 2)
            A = mm.minimal
            expect(A.is_zero_differential(), f"{name}, k={k}: nonzero differential")
            expect(sorted(A.degs) == sorted(d - k - 1 for d in Y.degs), f"{name}, k={k}: degrees")
            n += 1
    return f"{n} loop-space models"


def fx_freeness(cap: int | None) -> str:
    Y = triple_product_model()
    expect(d_length(Y) == 3, "d-length of the triple product model")
    c3 = cup_length(dual_cochains(cpn_lie(3), 8), 7)
    c2 = cup_length(dual_cochains(cpn_lie(2), 6), 5)
    expect(c3.value == 3 and c2.value == 2, f"cup lengths {c3.value}, {c2.value}")
    expect(not kotani_free_test(c3, Y) and kotani_free_test(c2, Y), "freeness test")
    Y7 = triple_product_model(7, 8, 9)
    mm = mapping_space_model(cpn_lie(3), Y7, cap=cap or 48)
    expect(nonfree_witness(mm.minimal) is not None, "no non-free witness for CP3")
    return "CP3 not free (witness found), CP2 free"


def fx_square_zero(cap: int | None) -> str:
    errs = []
    for name, M in sullivan_fixtures().items():
        errs += [f"{name}: {e}" for e in cdga_d_squared_failures(M)]
    pairs = [(cpn_lie(2), sphere_model(6)), (cpn_lie(2), triple_product_model()),
             (cpn_lie(3), triple_product_model(7, 8, 9)), (two_cp2_with_cell(), sphere_model(6))]
    for X, Y in pairs:
        try:
            mm = mapping_space_model(X, Y, cap=24)
        except ConsistencyError as e:
            errs.append(str(e))
            continue
        errs += primitive_vanishing_failures(mm.model)
        errs += mm.reduction.verify()
    expect(not errs, "; ".join(errs[:3]))
    return "d^2 = 0, primitive vanishing and reduction checks"


def fx_structure_lemmas(cap: int | None) -> str:
    rng = random.Random(7)
    models = list(sullivan_fixtures().items()) + [(f"random {i}", random_minimal_model(rng)) for i in range(30)]
    for name, M in models:
        errs = structure_lemma_failures(M)
        expect(not errs, f"{name}: {errs[0] if errs else ''}")
    return f"{len(models)} models"


def fx_lie_identities(cap: int | None) -> str:
    rng = random.Random(11)
    errs = lie_identity_failures(wedge_lie([2, 3, 3]).lie, rng, 40)
    for L in lie_fixtures().values():
        errs += leibniz_failures(L, rng, 15)
    expect(not errs, "; ".join(errs[:3]))
    return "antisymmetry, Jacobi and Leibniz"


def fx_round_trip(cap: int | None) -> str:
    m = parse_text(FIXTURE_TEXT)
    text = print_model(m)
    expect(parse_text(text) == m and print_model(parse_text(text)) == text, "round trip differs")
    return "parse(print(m)) == m"


def fx_json_determinism(cap: int | None) -> str:
    from .commands import Options, cmd_map_model, cmd_split_check
    from .report import stable_view, to_json
    m = parse_text(FIXTURE_TEXT)
    for fn, kw in ((cmd_map_model, {"x": "CP2", "y": "S6"}), (cmd_split_check, {"attach": "square", "y": "Y"})):
        a = to_json(stable_view(fn(m, Options(minimal=True), **kw)[0]))
        b = to_json(stable_view(fn(parse_text(FIXTURE_TEXT), Options(minimal=True), **kw)[0]))
        expect(a == b, f"{fn.__name__} output differs between runs")
    return "two runs byte-identical"


@contextmanager
def flipped_koszul_sign():
    """Temporarily corrupt the Koszul rule: every transposition picks up an
    extra sign, in the chains coproduct and in the mapping-space differential."""
    saved = chains.koszul, mapping.koszul
    chains.koszul = mapping.koszul = lambda a, b: -1 if (a * b) % 2 == 0 else 1
    try:
        yield
    finally:
        chains.koszul, mapping.koszul = saved


def fx_mutation(cap: int | None) -> str:
    with flipped_koszul_sign():
        try:
            fx_cp2_s6_model(24)
        except (Failure, ConsistencyError, ModelError) as e:
            return f"corrupted sign detected ({e})"
    raise Failure("corrupted Koszul sign went unnoticed")


FIXTURES = [
    Fixture("cp2-into-s6-minimal-model", fx_cp2_s6_model, 24, 11),
    Fixture("cp2-into-s6-splitting-fails", fx_cp2_s6_split, 24, 10),
    Fixture("cp2-into-triple-product-splits", fx_cp2_triple_split, 30, 18),
    Fixture("two-cp2-into-cayley-decomposes", fx_two_cp2_cayley, 48, 24),
    Fixture("depth-equals-whitehead-length", fx_depth_equals_wl),
    Fixture("chain-homology-reduction", fx_chain_homology),
    Fixture("loop-space-models", fx_loop_spaces),
    Fixture("freeness-test", fx_freeness),
    Fixture("square-zero-and-vanishing", fx_square_zero),
    Fixture("structure-lemmas", fx_structure_lemmas),
    Fixture("lie-identities", fx_lie_identities),
    Fixture("parse-print-round-trip", fx_round_trip),
    Fixture("json-determinism", fx_json_determinism),
    Fixture("mutation-flipped-koszul-sign", fx_mutation),
]


def run(cap: int | None = None, only=None) -> tuple[list[Outcome], list[str]]:
    """Run the fixtures; ``cap`` overrides the cap of fixtures that take one."""
    outcomes, warnings = [], []
    for f in FIXTURES:
        if only and f.name not in only:
            continue
        use = f.default_cap
        if f.default_cap is not None and cap is not None:
            if cap < f.min_cap:
                warnings.append(f"{f.name}: cap {cap} below its minimum {f.min_cap}; skipped")
                outcomes.append(Outcome(f.name, "skip", f"needs cap >= {f.min_cap}"))
                continue
            use = cap
        try:
            detail = f.run(use)
            outcomes.append(Outcome(f.name, "pass", detail))
        except Failure as e:
            outcomes.append(Outcome(f.name, "fail", str(e)))
        except Exception as e:  # report, don't crash the suite
            outcomes.append(Outcome(f.name, "fail", f"{type(e).__name__}: {e}"))
    return outcomes, warnings
