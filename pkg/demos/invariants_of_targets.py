"""Invariants of Sullivan minimal models.

For a handful of targets we compute the filtration by the quadratic part of
the differential, the Whitehead length of the homotopy Lie algebra (the two
always agree), the d-length and the cup length.  The last two feed a simple
freeness test for mapping spaces: if the d-length of Y exceeds the cup length
of X, the mapping space has free cohomology.

Run:  python demos/invariants_of_targets.py
"""

from __future__ import annotations

import random

from mapspace import cup_length, d1_filtration, d_length, kotani_free_test, whitehead_length
from mapspace.chains import dual_cochains
from mapspace.fixtures import (cayley_model, cpn_lie, cpn_model, depth_two_model, random_minimal_model,
                               sphere_model, triple_product_model)

targets = {
    "S5": sphere_model(5),
    "S6": sphere_model(6),
    "CP3": cpn_model(3),
    "cubic": triple_product_model(),
    "depth two": depth_two_model(),
    "Cayley plane": cayley_model(),
}

# Cup length is computed up to a degree bound.  A target with an even generator
# whose powers never vanish (like x2 in the cubic model) only gives a lower bound.
print(f"{'model':<14}{'filtration':<14}{'depth':>6}{'WL':>4}{'d-length':>10}  cup length")
for name, M in targets.items():
    F = d1_filtration(M)
    dl = d_length(M)
    c = cup_length(M)
    print(f"{name:<14}{str(F.dims()):<14}{F.depth:>6}{whitehead_length(M):>4}"
          f"{'inf' if dl == float('inf') else dl:>10}  {c.value} (degrees <= {c.upto})")

# Depth and Whitehead length agree on random models too.
rng = random.Random(1)
agree = sum(d1_filtration(M).depth == whitehead_length(M)
            for M in (random_minimal_model(rng) for _ in range(200)))
print(f"\nrandom models where depth = Whitehead length: {agree}/200")

# Freeness: compare the d-length of the cubic target with cup lengths of sources.
Y = targets["cubic"]
for n in (2, 3):
    c = cup_length(dual_cochains(cpn_lie(n), 2 * n + 2), 2 * n + 1)
    verdict = "free" if kotani_free_test(c, Y) else "test inconclusive"
    print(f"CP{n}: cup length {c.value}, d-length of target {d_length(Y)} -> {verdict}")
