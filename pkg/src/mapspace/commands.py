"""Implementation of the command-line subcommands as functions from a parsed
model file and options to a report dictionary and an exit status."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import report as R
from .algebra import CapError, FreeCDGA, ModelError
from .chains import ChainCoalgebra, dual_cochains
from .invariants import cup_length, d1_filtration, d_length, whitehead_length
from .lie import FreeDGL
from .mapping import ConnectivityError, ConsistencyError, mapping_space_model
from .parser import Block, InputError, ModelFile, lie_terms, to_cdga, to_dgl
from .splitting import (SPLITS, Verdict, class_bracket_length, decompose, lie_element,
                        splitting_check, uniform_words)

EXIT_OK, EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_CONSISTENCY = 0, 1, 2, 3


@dataclass
class Options:
    cap: int | None = None
    q: Fraction | None = None
    minimal: bool = False
    strict: bool = False


def default_cap(*blocks: Block) -> int:
    """Twice the largest declared generator degree, plus two."""
    return 2 * max((d for b in blocks for _, d in b.gens), default=0) + 2


def _cap(mf: ModelFile, opts: Options, *blocks: Block) -> int:
    if opts.cap is not None:
        return opts.cap
    return mf.params.get("cap", default_cap(*blocks))


def _q(mf: ModelFile, opts: Options) -> Fraction:
    return opts.q if opts.q is not None else mf.params.get("q", Fraction(1))


def _inputs(mf: ModelFile, cap: int, q: Fraction | None = None, **blocks) -> dict:
    out = {"file": mf.source or "<text>", "cap": cap}
    if q is not None:
        out["q"] = R.rational(q)
    out.update({k: v for k, v in blocks.items() if v is not None})
    return out


def _pick(mf: ModelFile, name: str | None, kind: str) -> Block:
    if name:
        return mf.block(name, kind)
    cands = mf.of_kind(kind)
    if len(cands) != 1:
        raise InputError(f"specify the {kind} block to use (file has {len(cands)})")
    return cands[0]


# -- analyze ----------------------------------------------------------------------


def analyze_sullivan(A: FreeCDGA, cap: int) -> dict:
    top = cap - 1
    out: dict = {"kind": "sullivan", "generators": R.generator_table(A)}
    minimal = A.linear_part_zero()
    out["minimal"] = minimal
    if minimal:
        out["d_length"] = R.count(d_length(A))
        if 1 in A.degs:
            out["homotopy_lie"] = "not computed: degree-1 generators"
        else:
            F = d1_filtration(A)
            out["d1_depth"] = F.depth
            out["d1_filtration_dims"] = F.dims()
            out["whitehead_length"] = whitehead_length(A)
        out["homotopy_ranks"] = R.rank_table({n: A.degs.count(n) for n in set(A.degs)})
    out["cohomology_ranks"] = {"ranks": R.rank_table(A.betti(top)), "upto": top, "within_cap": True}
    c = cup_length(A, top)
    out["cup_length"] = {"value": c.value, "upto": c.upto, "within_cap": True}
    return out


def _lie_diff(L: FreeDGL, g: int) -> str:
    n = L.degs[g] - 1
    return L.lie.format(n, L.lie.coords(L.d_gen[g], n)) if g in L.d_gen else "0"


def analyze_lie(L: FreeDGL, attaches: list, q: Fraction) -> dict:
    out: dict = {"kind": "lie", "generators": [
        {"name": L.names[g], "degree": L.degs[g],
         "differential": _lie_diff(L, g)}
        for g in range(len(L.degs))]}
    dimx = L.dim_x()
    out["dim_x"] = dimx
    C = ChainCoalgebra(L, dimx + 1)
    out["rational_homology_ranks"] = {"ranks": R.rank_table(C.homology_ranks(dimx)), "upto": dimx,
                                      "within_cap": True}
    cup = cup_length(dual_cochains(L, dimx + 1), dimx)
    out["cup_length"] = {"value": cup.value, "upto": cup.upto, "within_cap": True}
    rows = []
    for a in attaches:
        z = lie_terms(a.terms, L.lie.index, q)
        row = {"name": a.name, "cell": a.cell}
        try:
            row["word_bracket_length"] = R.count(uniform_words(z) if z else float("inf"))
        except ModelError as e:
            row["word_bracket_length"] = f"mixed: {e}"
        zl = lie_element(L, z, a.cell - 2)
        row["is_cycle"] = not L.d(zl) if zl.coords else True
        row["class_bracket_length"] = R.count(class_bracket_length(L, zl)) if row["is_cycle"] else "n/a"
        rows.append(row)
    if rows:
        out["attaching_classes"] = rows
    return out


def cmd_analyze(mf: ModelFile, opts: Options, names=()) -> tuple[dict, int]:
    blocks = [mf.block(n) for n in names] if names else list(mf.blocks.values())
    if not blocks:
        raise InputError("the file declares no blocks")
    q = _q(mf, opts)
    warnings, results = [], {}
    for b in blocks:
        cap = _cap(mf, opts, b)
        topdeg = max((d for _, d in b.gens), default=0)
        if cap < topdeg + 2:
            warnings.append(f"{b.name}: cap {cap} is below top generator degree + 2 = {topdeg + 2}; "
                            "values are truncated")
        if b.kind == "sullivan":
            results[b.name] = analyze_sullivan(to_cdga(b, cap=cap), cap)
        else:
            L = to_dgl(b, q=q, cap=max(cap, topdeg + 3))
            results[b.name] = analyze_lie(L, [a for a in mf.attaches.values() if a.lie == b.name], q)
        results[b.name]["cap"] = cap
    rep = R.envelope("analyze", _inputs(mf, _cap(mf, opts, *blocks), q, blocks=[b.name for b in blocks]),
                     {"blocks": results}, warnings)
    return rep, EXIT_OK


# -- map-model --------------------------------------------------------------------


def cmd_map_model(mf: ModelFile, opts: Options, x: str | None = None, y: str | None = None
                  ) -> tuple[dict, int]:
    bx, by = _pick(mf, x, "lie"), _pick(mf, y, "sullivan")
    cap, q = _cap(mf, opts, bx, by), _q(mf, opts)
    L, Y = to_dgl(bx, q=q), to_cdga(by)
    warnings = []
    try:
        mm = mapping_space_model(L, Y, cap=cap, minimal=opts.minimal)
    except ConnectivityError as e:
        raise InputError(str(e)) from e
    B = mm.coalgebra
    res: dict = {
        "coalgebra": [{"name": B.names[k], "degree": B.degrees[k], "role": B.roles[k]}
                      for k in range(len(B))],
        "based_model": {"generators": R.generator_table(mm.model.algebra)},
    }
    if opts.minimal:
        A = mm.minimal
        errs = mm.reduction.verify()
        if errs:
            raise ConsistencyError("minimal reduction fails: " + "; ".join(errs))
        res["minimal_model"] = {"generators": R.generator_table(A),
                                "homotopy_ranks": R.rank_table({n: A.degs.count(n) for n in set(A.degs)})}
    else:
        A = mm.model.algebra
    res["cohomology_ranks"] = {"ranks": R.rank_table(A.betti(cap - 1)), "upto": cap - 1, "within_cap": True}
    rep = R.envelope("map-model", _inputs(mf, cap, q, x=bx.name, y=by.name, minimal=opts.minimal),
                     res, warnings)
    return rep, EXIT_OK


# -- split-check / decompose ------------------------------------------------------------


def verdict_result(v: Verdict) -> dict:
    out = {"verdict": v.kind, "bracket_length": R.count(v.bracket_length),
           "whitehead_length": v.whitehead_length, "d1_depth": v.d1_depth,
           "connectivity": R.count(v.connectivity), "dim_x": v.dim_x, "cell_dimension": v.k + 1,
           "reasons": list(v.reasons)}
    if v.blocking_degree is not None:
        out["blocking_degree"] = v.blocking_degree
    if v.witness is not None:
        W, names = v.witness, v.models.Mb.algebra.names
        P = W.product
        out["witness"] = {
            "checks": [{"check": d, "passed": bool(p)} for d, p in W.checks],
            "gamma_cycles": {k: R.poly(g, names) for k, g in W.gammas.items()},
            "product_generators": R.generator_table(P),
            "generator_counts": {"mapping_space_of_x": len(v.models.Rs.minimal),
                                 "loop_space_factor": len(v.models.Mb.order)},
            "ranks_upto": W.ranks["upto"],
        }
    if v.models is not None:
        out["target_minimal_model"] = R.generator_table(v.models.Rb.minimal)
    c = v.certificate
    if c is not None:
        cert = {"kind": c.kind, "nonzero_differentials": list(c.nonzero_differentials)}
        for k in ("degree", "product_rank", "target_rank", "relation"):
            if getattr(c, k) is not None:
                cert[k] = getattr(c, k)
        out["certificate"] = cert
    return out


def _status_code(kind: str, strict: bool) -> int:
    return EXIT_HYPOTHESIS if strict and kind != SPLITS else EXIT_OK


def cmd_split_check(mf: ModelFile, opts: Options, attach: str | None = None, y: str | None = None
                    ) -> tuple[dict, int]:
    if attach is None:
        if len(mf.attaches) != 1:
            raise InputError(f"specify the attach declaration to use (file has {len(mf.attaches)})")
        attach = next(iter(mf.attaches))
    a = mf.attaches.get(attach)
    if a is None:
        raise InputError(f"no attach declaration named {attach!r}")
    bx, by = mf.block(a.lie, "lie"), _pick(mf, y, "sullivan")
    cap, q = _cap(mf, opts, bx, by), _q(mf, opts)
    L, Y = to_dgl(bx, q=q), to_cdga(by)
    z = lie_terms(a.terms, L.lie.index, q)
    try:
        uniform_words(z)
    except ModelError as e:
        raise InputError(f"attach {a.name}: {e}. Split the cell into separate attach "
                         "declarations per bracket length, or rewrite the cycle homologously") from e
    v = splitting_check(L, z, a.cell - 1, Y, cap=cap, name=f"e{a.cell}")
    rep = R.envelope("split-check", _inputs(mf, cap, q, attach=a.name, x=a.lie, y=by.name),
                     verdict_result(v), status=v.kind)
    return rep, _status_code(v.kind, opts.strict)


def cmd_decompose(mf: ModelFile, opts: Options, x: str | None = None, y: str | None = None
                  ) -> tuple[dict, int]:
    bx, by = _pick(mf, x, "lie"), _pick(mf, y, "sullivan")
    cap, q = _cap(mf, opts, bx, by), _q(mf, opts)
    L, Y = to_dgl(bx, q=q), to_cdga(by)
    D = decompose(L, Y, cap=cap)
    res: dict = {
        "splits": D.ok,
        "cell_counts": {str(n): c for n, c in sorted(D.cell_counts.items())},
        "steps": [{"cell": name, "dimension": dim, "verdict": v.kind,
                   "bracket_length": R.count(v.bracket_length), "whitehead_length": v.whitehead_length}
                  for name, dim, v in D.steps],
    }
    if D.ok:
        res["product_generators"] = [{"name": n, "degree": d} for n, d in zip(D.product.names, D.product.degs)]
        top = max(Y.degs, default=0)
        res["homotopy_ranks"] = R.rank_table({n: D.homotopy_rank(n) for n in range(1, top + 1)})
    else:
        res["failure"] = D.failure
        res["failed_step"] = verdict_result(D.steps[-1][2])
    status = SPLITS if D.ok else D.steps[-1][2].kind
    rep = R.envelope("decompose", _inputs(mf, cap, q, x=bx.name, y=by.name), res, status=status)
    return rep, _status_code(status, opts.strict)


def cmd_selftest(opts: Options, only=None) -> tuple[dict, int]:
    """Run the fixture suite; exit status 3 if any fixture fails."""
    from .selftest import run
    outcomes, warnings = run(cap=opts.cap, only=only)
    counts = {k: sum(1 for o in outcomes if o.outcome == k) for k in ("pass", "fail", "skip")}
    res = {"passed": counts["pass"], "failed": counts["fail"], "skipped": counts["skip"],
           "fixtures": [{"name": o.name, "outcome": o.outcome, "detail": o.detail} for o in outcomes]}
    inputs = {"cap": opts.cap} if opts.cap else {}
    status = "fail" if counts["fail"] else "ok"
    rep = R.envelope("selftest", inputs, res, warnings, status=status)
    return rep, EXIT_CONSISTENCY if counts["fail"] else EXIT_OK


def guard(fn, *args, **kw) -> tuple[dict | None, int, str | None]:
    """Run a command, mapping exceptions to exit codes and messages."""
    try:
        rep, code = fn(*args, **kw)
        return rep, code, None
    except ConsistencyError as e:
        return None, EXIT_CONSISTENCY, f"internal consistency failure: {e}"
    except CapError as e:
        return None, EXIT_INPUT, f"cap insufficient: {e}"
    except (ModelError, ValueError) as e:
        return None, EXIT_INPUT, f"error: {e}"
