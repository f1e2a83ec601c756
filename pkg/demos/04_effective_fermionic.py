"""Spin driven by the light quadrature of a bosonic run.

From |e,0> the quadrature vanishes by symmetry and the spin stays put.
From |+,0> the field follows a single displaced branch, so the drive is
nonzero and the spin precesses.
"""
import math

from rabiduality import FockSpec, ModelParams, TimeGrid, effective_fermionic_evolve, evolve_spectral, quadrature_signal
from rabiduality.dynamics import DRIVE_FACTORS
from rabiduality.hilbert import product_state, spin_state
from rabiduality.model import build_effective

params = ModelParams(omega=1.0, omega0=0.8, g=0.3)
spec = FockSpec(40)
grid = TimeGrid(0, 2 * math.pi, 2000)
H_plus = build_effective(params, spec, "bosonic")

for label in ("e", "+"):
    x = quadrature_signal(evolve_spectral(H_plus, product_state(label, 0, spec), grid))
    for factor in sorted(DRIVE_FACTORS):
        spin = effective_fermionic_evolve(params, x, spin_state("e"), grid, DRIVE_FACTORS[factor])
        sz = spin.observables["sigma_z"]
        print(f"field start |{label},0>, factor {factor:>14}: max|x| = {abs(x).max():.3e}, "
              f"<sigma_z> in [{sz.min():+.6f}, {sz.max():+.6f}]")
