"""
Surface bundles with monodromy -1 plus a nilpotent twist
========================================================

A genus-n surface bundle whose monodromy on H_1 is (x, y) -> (-x + y, -y).
Its rational cohomology looks like that of S^1 x S^2, so ordinary Massey
products vanish at the trivial local system, but the twisted local system
at lambda = -1 sees Jordan blocks of size 2.
"""

from massey_torus import analyze, builtin_fixture
from massey_torus.jordan import jordan_profile
from massey_torus.polyalg import Poly

u = Poly.x()

for n in (1, 2, 3):
    inp = builtin_fixture("surface", n)
    prof = jordan_profile(inp.payload[1], u + 1)
    report = analyze(inp)
    print(f"n = {n}: blocks at -1 {prof.block_sizes}, betti {tuple(report.betti)}")
    print("   not formal:", report.verdicts["not_formal"]["value"],
          "| not strongly formal:", report.verdicts["not_strongly_formal"]["value"])
    for w in report.verdicts["not_strongly_formal"]["witnesses"]:
        print("   witness", w)

# %%
# The twisted cohomology at -1 is where the obstruction lives.

print(analyze(builtin_fixture("surface", 2)).twisted)
