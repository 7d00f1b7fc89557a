"""
Massey lengths straight from an L-module presentation
=====================================================

Any finitely presented graded module over L = Q[u, 1/u] defines an exact
couple, whether or not it comes from a mapping torus.  Here we scramble a
module by unimodular row and column operations, add free summands, and check
that the sheet where the couple degenerates still matches the Jordan blocks
of u acting on torsion.
"""

import random

from massey_torus import couple as cp
from massey_torus.jordan import jordan_profile
from massey_torus.lmodules import FPModule, normalize, torsion_action
from massey_torus.polyalg import Poly, PolyRing
from massey_torus.random_instances import scramble

R = PolyRing()
u = R.gen()
rng = random.Random(7)

raw = FPModule.from_factors([(u - 2) ** 3 * (u + 1), (u - 2)], free_rank=1)
messy = scramble(raw, rng)
print("presentation entries have degree up to",
      max(e.degree for row in messy.presentation.data for e in row))

clean = normalize(messy)
print("free rank", clean.free_rank, "invariant factors", [str(f) for f in clean.invariant_factors])

# %%
# Jordan blocks of the torsion automorphism at 2 versus the sheet.

f = torsion_action(clean).action
print("blocks at 2:", jordan_profile(f, Poly.x() - 2).block_sizes)
table = cp.pages(cp.build_couple([clean], Poly.x() - 2), r_max=5)
print("pages:", table.to_json()["pages"])
print("mu_0 =", cp.mu(table)[0])

# %%
# The closed-form count from primary exponents reproduces the same table.

closed = cp.couple_closed_form(cp.build_couple([clean], Poly.x() - 2), r_max=5)
print("closed form agrees:", closed.dims == table.dims)
