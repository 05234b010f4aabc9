"""When does attaching a cell split the mapping space?

Attaching a cell e to X gives a fibration F_*(X u e, Y) -> F_*(X, Y) whose fibre
is an iterated loop space of Y.  The check compares the bracket length of the
attaching class with the Whitehead length of Y.  A strictly longer bracket
guarantees a rational product splitting, and the tool builds the explicit
isomorphism.  Otherwise it looks for an obstruction in the minimal models.

Run:  python demos/splitting_a_cell.py
"""

from __future__ import annotations

from mapspace import splitting_check
from mapspace.fixtures import sphere_lie, sphere_model, triple_product_model, wedge_lie

SQUARE = {(0, 0): 1}     # [i, i] in the Lie model of S2


def show(title, v):
    print(f"\n{title}")
    print(f"  verdict: {v.kind}")
    print(f"  bracket length {v.bracket_length}, Whitehead length {v.whitehead_length}, "
          f"d1-depth {v.d1_depth}")
    for r in v.reasons:
        print(f"  reason: {r}")
    if v.witness is not None:
        for y, g in v.witness.gammas.items():
            print(f"  cycle for {y}: {v.models.Mb.algebra.format(g)}")
        for desc, ok in v.witness.checks:
            print(f"  check {'ok  ' if ok else 'FAIL'} {desc}")
    if v.certificate is not None:
        c = v.certificate
        print(f"  obstruction: {c.kind} in degree {c.degree} "
              f"(product {c.product_rank} vs actual {c.target_rank})")


# The target S6 has Whitehead length 1 (the square of its fundamental class).
# Attaching the 4-cell of CP2 along a bracket of length 1 does not clear it.
show("CP2 = S2 u e4, target S6", splitting_check(sphere_lie(2), SQUARE, 3, sphere_model(6), cap=24))

# A target with a purely cubic differential has Whitehead length 0, so the
# same cell now splits off.
show("CP2 = S2 u e4, target with cubic differential",
     splitting_check(sphere_lie(2), SQUARE, 3, triple_product_model(), cap=30))

# A bracket of length two beats Whitehead length one.  The cycle for the
# top generator of S6 needs a decomposable correction term.
show("S2 v S2 u e5 along [a,[a,b]], target S6",
     splitting_check(wedge_lie([2, 2]), {(0, (0, 1)): 1}, 4, sphere_model(6), cap=24))

# Too small a cap cannot reach every generator, so the tool says so.
show("same as the second case with cap 12",
     splitting_check(sphere_lie(2), SQUARE, 3, triple_product_model(), cap=12))
