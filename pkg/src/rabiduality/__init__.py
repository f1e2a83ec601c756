"""Quantum Rabi model with its parity and duality symmetry operators.

Builds the Rabi Hamiltonian on a truncated Fock (x) spin space, checks the
parity/duality operator identities numerically, and propagates states under
the full, bosonic, fermionic and coupling-only Hamiltonians.
"""
from .dynamics import (
    TimeGrid,
    Trajectory,
    bosonic_propagator,
    cat_state,
    coupling_only_propagator,
    effective_fermionic_evolve,
    evolve_spectral,
    quadrature_signal,
)
from .hilbert import (
    CutoffError,
    FockSpec,
    Operator,
    StateVector,
    coherent_state,
    displacement,
    fock_ladder,
    hermitian_exp,
    product_state,
    spin_ops,
    tensor,
)
from .model import ModelParams, build_effective, build_qrm, build_transform, composite_bosons, hamiltonian
from .observables import compare_models, expectation, fidelity
from .symmetry import (
    ResidualReport,
    build_symmetry,
    conjugate,
    exp_generator,
    parity_sectors,
    verify_algebra,
)

__version__ = "0.1.0"
