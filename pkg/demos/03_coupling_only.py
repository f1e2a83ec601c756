"""Interaction-only dynamics: the field is displaced linearly in time.

<n>(t) = (g t)^2 until the cutoff guard stops the run.
"""
import numpy as np

from rabiduality import FockSpec, coupling_only_propagator
from rabiduality.hilbert import CutoffError, product_state
from rabiduality.model import field_ops

g = 0.2
spec = FockSpec(64)
psi0 = product_state("e", 0, spec)
n_op = field_ops(spec)["n"]

for t in (0.0, 2.5, 5.0, 10.0, 15.0, 18.0, 25.0):
    try:
        psi = coupling_only_propagator(g, spec, t) @ psi0
    except CutoffError as exc:
        print(f"t = {t:5.1f}: refused ({exc})")
        continue
    n = np.vdot(psi.vec, (n_op @ psi).vec).real
    print(f"t = {t:5.1f}: <n> = {n:.12f}   (g t)^2 = {(g * t) ** 2:.12f}")
