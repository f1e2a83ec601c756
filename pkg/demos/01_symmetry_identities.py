"""Check the parity and duality identities of the Rabi Hamiltonian numerically.

Run: python3 demos/01_symmetry_identities.py
"""
from rabiduality import FockSpec, ModelParams, verify_algebra
from rabiduality.symmetry import build_symmetry, exp_generator, phase_aligned_residual

params = ModelParams(omega=1.0, omega0=0.8, g=0.3)
spec = FockSpec(64)

report = verify_algebra(params, spec)
print(report.to_text())

# exp(i pi N) for each generator lands on a parity-type operator up to a phase
sym = build_symmetry(spec)
targets = {"N_JC": sym.Pi_z, "N_aJC": sym.Pi_z, "N_y": sym.Pi_y, "N_x": sym.Pi_x}
for name, target in targets.items():
    phase, resid = phase_aligned_residual(exp_generator(name, spec), target)
    print(f"exp(i pi {name:5}) = {complex(round(phase.real), round(phase.imag))} x target, residual {resid:.1e}")
