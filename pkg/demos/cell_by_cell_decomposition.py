"""Splitting a mapping space one cell at a time.

The source is two copies of CP2 glued along an extra 4-cell attached by the
mixed bracket [i1, i2].  The target is the Cayley plane, whose model has a
cubic differential and so Whitehead length 0.  Every cell splits, and the
rational homotopy of the mapping space is a sum of shifted copies of the
homotopy of the target: one copy per cell.

Run:  python demos/cell_by_cell_decomposition.py
"""

from __future__ import annotations

from mapspace import decompose
from mapspace.fixtures import cayley_model, two_cp2_with_cell

L, Y = two_cp2_with_cell(), cayley_model()
D = decompose(L, Y, cap=48)

for name, dim, v in D.steps:
    print(f"cell {name:<3} dimension {dim}: {v.kind}  "
          f"(bracket length {v.bracket_length}, Whitehead length {v.whitehead_length})")

print("\ncells by dimension:", dict(sorted(D.cell_counts.items())))
print("rational homotopy ranks of the mapping space:")
for n in range(1, 24):
    r = D.homotopy_rank(n)
    if r:
        sources = [f"{c} x pi_{n + k}(Y)" for k, c in sorted(D.cell_counts.items()) if n + k in Y.degs]
        print(f"  degree {n:>2}: {r}   from {' + '.join(sources)}")
