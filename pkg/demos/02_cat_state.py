"""Cat-state generation under the bosonic effective Hamiltonian.

Starting in |e,0>, the light mode splits into two coherent branches of
opposite amplitude. The mean photon number follows 4 (g/w)^2 sin^2(wt/2)
and returns to zero after one period.
"""
import math

import numpy as np

from rabiduality import FockSpec, ModelParams, TimeGrid, bosonic_propagator, cat_state, evolve_spectral, fidelity
from rabiduality.hilbert import product_state
from rabiduality.model import build_effective, field_ops

params = ModelParams(omega=1.0, omega0=0.8, g=0.5)
spec = FockSpec(64)
psi0 = product_state("e", 0, spec)
grid = TimeGrid(0, 2 * math.pi, 12)

traj = evolve_spectral(build_effective(params, spec, "bosonic"), psi0, grid)
n_op = field_ops(spec)["n"]

print("   t      <n> cat   <n> formula   F(cat, spectral)   F(U psi0, spectral)")
for k, t in enumerate(grid.times):
    psi = cat_state(params, spec, t)
    n = np.vdot(psi.vec, (n_op @ psi).vec).real
    formula = 4 * (params.g / params.omega) ** 2 * math.sin(params.omega * t / 2) ** 2
    f_cat = fidelity(psi, traj.state(k))
    f_u = fidelity(bosonic_propagator(params, spec, t) @ psi0, traj.state(k))
    print(f"{t:6.3f}  {n:10.6f}  {formula:10.6f}   {f_cat:.15f}  {f_u:.15f}")
