"""
The Heisenberg nilmanifold as a mapping torus
=============================================

The 3-dimensional Heisenberg nilmanifold fibers over the circle with a
2-torus fiber whose monodromy acts on H^1 by a unipotent Jordan block.
We recover its Betti numbers, watch the exact couple degenerate one page
late in degree 1, and read off the formality obstruction.
"""

from massey_torus import analyze, builtin_fixture
from massey_torus import couple as cp
from massey_torus.polyalg import Poly
from massey_torus.toruscx import FiberComplex, build_torus_complex, l_homology

inp = builtin_fixture("heisenberg")
for k, A in enumerate(inp.payload):
    print(f"phi^*_{k} =", A.to_json())

# %%
# Homology of the infinite cyclic cover, as modules over Q[u, 1/u].
# Degree 1 is a single cyclic summand L/(u-1)^2: the Jordan block survives.

fiber = FiberComplex.from_monodromy(inp.payload)
modules = l_homology(build_torus_complex(fiber))
for k, m in enumerate(modules):
    print(k, "free rank", m.free_rank, "torsion", [str(f) for f in m.invariant_factors])

# %%
# Pages of the couple for multiplication by u - 1.  E_1 is the ordinary
# cohomology (1, 2, 2, 1); the block of size 2 keeps a differential alive
# until d_2.

u = Poly.x()
table = cp.pages(cp.build_couple(modules, u - 1), r_max=4)
for r, row in enumerate(table.to_json()["pages"], start=1):
    print(f"E_{r}:", row[:4])
print("sigma:", {k: table.sigma[k] for k in range(4)})
print("mu:   ", {k: v for k, v in cp.mu(table).items() if k < 4})

# %%
# The full report agrees, and flags the manifold as non-formal.

report = analyze(inp)
print(report.to_table())
