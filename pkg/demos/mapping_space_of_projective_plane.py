"""Maps from the complex projective plane into the 6-sphere.

The source is given by its Lie model: a degree-1 generator i for the 2-cell and
a degree-3 generator w for the 4-cell, with d w = q [i, i].  The target is the
Sullivan model of S6.  We build the model of the based mapping space, reduce it
to a minimal model and watch how the attaching scale q enters the one
nontrivial differential.

Run:  python demos/mapping_space_of_projective_plane.py
"""

from __future__ import annotations

from fractions import Fraction

from mapspace import mapping_space_model
from mapspace.fixtures import cpn_lie, sphere_model

Y = sphere_model(6)
print("target model:")
for name, deg in zip(Y.names, Y.degs):
    print(f"  {name}  degree {deg}   d{name} = {Y.format(Y.d_gen.get(Y.index[name], {}))}")

mm = mapping_space_model(cpn_lie(2), Y, cap=24)

# The chains coalgebra of the Lie model is truncated to degrees the target can see.
B = mm.coalgebra
print("\ncoalgebra basis used for the mapping space:")
for k in range(len(B)):
    print(f"  {B.names[k]:<12} degree {B.degrees[k]}  ({B.roles[k]})")

# The based model has one generator per pair (target generator, coalgebra element).
print(f"\nbased model: {len(mm.model.algebra.degs)} generators")

A = mm.minimal
print("minimal model:")
for g in sorted(range(len(A.degs)), key=lambda g: A.degs[g]):
    print(f"  {A.names[g]:<10} degree {A.degs[g]:>2}   d = {A.format(A.d_gen.get(g, {}))}")

errs = mm.reduction.verify()
print("reduction checks:", "ok" if not errs else errs)

# Rescaling the attaching map rescales the differential linearly.
print("\nattaching scale q and the coefficient of the quadratic differential:")
for q in (Fraction(1), Fraction(2), Fraction(-1, 3)):
    A = mapping_space_model(cpn_lie(2, q), Y, cap=24).minimal
    (coef,) = A.d_gen[A.degs.index(7)].values()
    print(f"  q = {q!s:>4}:  {coef}")
