"""Expectation values, fidelities and model-against-model comparisons."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dynamics import TimeGrid, Trajectory, evolve_spectral, write_columns
from .hilbert import FockSpec, Operator, StateVector
from .model import MODEL_KINDS, ModelParams, field_ops, hamiltonian, spin_composite
from .symmetry import build_symmetry

__all__ = [
    "expectation",
    "fidelity",
    "ComparisonCurve",
    "compare_models",
    "trajectory_expectation",
    "standard_observables",
]


def expectation(A: Operator, psi: StateVector, tol: float = 1e-10) -> complex:
    """``<psi|A|psi>``.

    For Hermitian ``A`` an imaginary part above ``tol`` raises, since it can
    only come from a malformed state or operator.
    """
    if A.dim != psi.dim:
        raise ValueError(f"dimension mismatch: operator {A.dim}, state {psi.dim}")
    value = complex(np.vdot(psi.vec, A.mat @ psi.vec))
    if A.is_hermitian(1e-12) and abs(value.imag) > tol:
        raise ValueError(f"Hermitian expectation has imaginary part {value.imag:.3e}")
    return value


def fidelity(psi1: StateVector, psi2: StateVector) -> float:
    """``|<psi1|psi2>|^2``, insensitive to global phase."""
    if psi1.dim != psi2.dim:
        raise ValueError(f"dimension mismatch: {psi1.dim} vs {psi2.dim}")
    return float(abs(np.vdot(psi1.vec, psi2.vec)) ** 2)


def trajectory_expectation(A: Operator, traj: Trajectory) -> np.ndarray:
    """Real part of ``<psi(t)|A|psi(t)>`` at every stored sample."""
    if traj.states is None:
        raise ValueError("trajectory does not store states")
    values = np.einsum("ki,ij,kj->k", traj.states.conj(), A.mat, traj.states)
    return values.real.copy()


def standard_observables(traj: Trajectory, spec: FockSpec) -> dict[str, np.ndarray]:
    """Photon number, quadrature, Bloch vector and parity along a composite trajectory."""
    f = field_ops(spec)
    s = spin_composite(spec)
    return {
        "n": trajectory_expectation(f["n"], traj),
        "x": trajectory_expectation(f["x"], traj),
        "sigma_x": trajectory_expectation(s["sigma_x"], traj),
        "sigma_y": trajectory_expectation(s["sigma_y"], traj),
        "sigma_z": trajectory_expectation(s["sigma_z"], traj),
        "parity": trajectory_expectation(build_symmetry(spec).Pi_z, traj),
    }


@dataclass(eq=False)
class ComparisonCurve:
    """Per-sample fidelity between two models plus paired observables."""

    grid: TimeGrid
    fidelity: np.ndarray
    kinds: tuple[str, str]
    observable_pairs: dict[str, tuple[np.ndarray, np.ndarray]] = field(default_factory=dict)

    def to_csv(self) -> str:
        ka, kb = self.kinds
        cols = [("t", self.grid.times), ("fidelity", self.fidelity)]
        for name, (sa, sb) in self.observable_pairs.items():
            cols += [(f"{name}_{ka}", sa), (f"{name}_{kb}", sb)]
        return write_columns(cols)


def compare_models(
    params: ModelParams,
    spec: FockSpec,
    psi0: StateVector,
    grid: TimeGrid,
    kind_a: str,
    kind_b: str,
) -> ComparisonCurve:
    """Evolve ``psi0`` under two Hamiltonians and record their overlap.

    ``kind_a`` and ``kind_b`` are any of ``full``, ``bosonic``,
    ``fermionic``, ``coupling``, ``transform``. Both runs use
    :func:`~rabiduality.dynamics.evolve_spectral`; ``n`` and ``sigma_z``
    are recorded for each.
    """
    for k in (kind_a, kind_b):
        if k not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {k!r}; expected one of {MODEL_KINDS}")
    traj_a = evolve_spectral(hamiltonian(params, spec, kind_a), psi0, grid)
    traj_b = traj_a if kind_b == kind_a else evolve_spectral(hamiltonian(params, spec, kind_b), psi0, grid)
    overlaps = np.einsum("ki,ki->k", traj_a.states.conj(), traj_b.states)
    fid = np.abs(overlaps) ** 2
    f = field_ops(spec)
    s = spin_composite(spec)
    pairs = {
        "n": (trajectory_expectation(f["n"], traj_a), trajectory_expectation(f["n"], traj_b)),
        "sigma_z": (trajectory_expectation(s["sigma_z"], traj_a), trajectory_expectation(s["sigma_z"], traj_b)),
    }
    return ComparisonCurve(grid, fid, (kind_a, kind_b), pairs)
