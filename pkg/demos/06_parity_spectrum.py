"""Spectra split by parity sector.

The bosonic effective Hamiltonian is a displaced oscillator in each sigma_x
branch, so every level w n - g^2/w appears twice, once per sector.
"""
import numpy as np

from rabiduality import FockSpec, ModelParams, parity_sectors
from rabiduality.model import hamiltonian

spec = FockSpec(128)
params = ModelParams(omega=1.0, omega0=0.8, g=0.4)

for kind in ("bosonic", "full"):
    plus, minus, cross = parity_sectors(hamiltonian(params, spec, kind), spec)
    ep = np.linalg.eigvalsh(plus.mat)[:6]
    em = np.linalg.eigvalsh(minus.mat)[:6]
    print(f"{kind}: cross-sector norm {cross:.1e}")
    print("  + sector:", np.array2string(ep, precision=10))
    print("  - sector:", np.array2string(em, precision=10))
print("displaced oscillator:", np.arange(6) - params.g**2 / params.omega)
