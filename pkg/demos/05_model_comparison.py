"""How far do the effective Hamiltonians drift from the full Rabi dynamics?"""
import math

from rabiduality import FockSpec, ModelParams, TimeGrid, compare_models
from rabiduality.hilbert import product_state

spec = FockSpec(40)
psi0 = product_state("e", 0, spec)
grid = TimeGrid(0, 2 * math.pi, 200)

for params in (ModelParams(1.0, 0.8, 0.3), ModelParams(1.0, 0.0, 0.3), ModelParams(0.0, 0.8, 0.3)):
    for other in ("bosonic", "fermionic", "coupling", "transform"):
        curve = compare_models(params, spec, psi0, grid, "full", other)
        print(f"w={params.omega} w0={params.omega0} g={params.g}  full vs {other:9}: "
              f"min fidelity {curve.fidelity.min():.12f}")
