"""Time evolution under the Rabi Hamiltonian and its effective forms.

Two routes are provided and kept independent so they can check each other:

* :func:`evolve_spectral` diagonalizes any Hermitian generator once and
  propagates along a time grid;
* closed forms built from the composite bosons ``b = sigma_x (x) a``:
  :func:`bosonic_propagator`, :func:`cat_state` and
  :func:`coupling_only_propagator`.

Closed-form and spectral propagators differ by an unobservable global
phase, so they are compared through fidelities only.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .hilbert import (
    FockSpec,
    Operator,
    StateVector,
    check_cutoff,
    coherent_state,
    displacement,
    hermitian_exp,
    spectral_decomposition,
    spin_ops,
    spin_state,
)
from .model import ModelParams, composite_bosons, field_ops

__all__ = [
    "TimeGrid",
    "Trajectory",
    "DRIVE_FACTORS",
    "evolve_spectral",
    "displacement_amplitude",
    "branch_amplitude",
    "amplitude_bound",
    "bosonic_propagator",
    "cat_state",
    "coupling_only_propagator",
    "quadrature_signal",
    "effective_fermionic_evolve",
]

# coefficient of g x(t) sigma_x in the quadrature-driven spin Hamiltonian
DRIVE_FACTORS = {"paper_2g": 2.0, "substitution_g": 1.0}


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid of ``steps + 1`` samples from ``t0`` to ``t1`` inclusive.

    ``t1 == t0`` is accepted and yields the single sample ``t0``.
    """

    t0: float = 0.0
    t1: float = 2 * math.pi
    steps: int = 200

    def __post_init__(self):
        if int(self.steps) != self.steps or self.steps < 1:
            raise ValueError(f"steps must be an integer >= 1, got {self.steps!r}")
        if not self.t1 >= self.t0:
            raise ValueError(f"t1 ({self.t1}) must not precede t0 ({self.t0})")
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "t1", float(self.t1))
        object.__setattr__(self, "steps", int(self.steps))

    @property
    def times(self) -> np.ndarray:
        if self.t1 == self.t0:
            return np.array([self.t0])
        return np.linspace(self.t0, self.t1, self.steps + 1)

    def __len__(self):
        return len(self.times)


@dataclass(eq=False)
class Trajectory:
    """Time grid with optional stored states and named observable series."""

    grid: TimeGrid
    states: Optional[np.ndarray] = None  # shape (len(grid), dim)
    observables: dict[str, np.ndarray] = field(default_factory=dict)
    space: str = "composite"

    @property
    def times(self) -> np.ndarray:
        return self.grid.times

    def state(self, k: int) -> StateVector:
        if self.states is None:
            raise ValueError("trajectory does not store states")
        return StateVector(self.states[k], self.space)

    def to_csv(self, include_states: bool = False) -> str:
        """CSV text: ``t`` then the observables, optionally state amplitudes.

        Numbers are written with 17 significant digits and LF line endings so
        identical runs give identical bytes. Complex series are split into
        ``_re`` / ``_im`` columns.
        """
        t = self.times
        cols: list[tuple[str, np.ndarray]] = [("t", t)]
        for name, series in self.observables.items():
            series = np.asarray(series)
            if np.iscomplexobj(series):
                cols += [(f"{name}_re", series.real), (f"{name}_im", series.imag)]
            else:
                cols.append((name, series))
        if include_states:
            if self.states is None:
                raise ValueError("trajectory does not store states")
            for i in range(self.states.shape[1]):
                cols += [(f"psi{i}_re", self.states[:, i].real), (f"psi{i}_im", self.states[:, i].imag)]
        return write_columns(cols)


def write_columns(cols: list[tuple[str, np.ndarray]], units: bool = True) -> str:
    buf = io.StringIO()
    if units:
        buf.write("# units: hbar=1, dimensionless\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([name for name, _ in cols])
    for row in zip(*(c for _, c in cols)):
        writer.writerow([f"{float(v):.17g}" for v in row])
    return buf.getvalue()


def evolve_spectral(H: Operator, psi0: StateVector, grid: TimeGrid) -> Trajectory:
    """Propagate ``psi0`` under a time-independent Hermitian ``H``.

    One eigendecomposition is reused for every sample:
    ``psi(t) = V exp(-i w (t - t0)) V^dag psi0``.
    """
    if H.dim != psi0.dim:
        raise ValueError(f"dimension mismatch: H is {H.dim}, psi0 is {psi0.dim}")
    w, v = spectral_decomposition(H)
    coeffs = v.conj().T @ psi0.vec
    dt = grid.times - grid.t0
    phases = np.exp(-1j * np.outer(dt, w))
    states = (phases * coeffs) @ v.T
    states[0] = psi0.vec
    return Trajectory(grid, states, {}, H.space)


# --- closed forms ----------------------------------------------------------


def displacement_amplitude(params: ModelParams, t: float) -> complex:
    """``beta(t) = (g/omega)(1 - exp(i omega t))``.

    Uses ``1 - e^{i x} = -2i sin(x/2) e^{i x/2}`` to stay accurate for small
    ``omega t``; the ``omega -> 0`` limit is ``-i g t``.
    """
    if params.omega == 0:
        return complex(-1j * params.g * t)
    x = params.omega * t
    return complex(params.g / params.omega * (-2j * math.sin(0.5 * x)) * np.exp(0.5j * x))


def branch_amplitude(params: ModelParams, t: float) -> complex:
    """Coherent amplitude ``exp(-i omega t) beta(t)`` reached by ``|+, 0>``.

    This is ``(g/omega)(exp(-i omega t) - 1)``, the amplitude after the free
    rotation ``exp(-i omega t b^dag b)`` has acted on ``D(beta)``.
    """
    return complex(np.exp(-1j * params.omega * t) * displacement_amplitude(params, t))


def amplitude_bound(params: ModelParams, t_max: float) -> float:
    """Largest coherent amplitude a run can reach: ``2g/omega``, or ``g t_max`` at ``omega = 0``."""
    if params.omega > 0:
        return 2.0 * params.g / params.omega
    return params.g * abs(t_max)


def bosonic_propagator(params: ModelParams, spec: FockSpec, t: float) -> Operator:
    """``U(t) = exp(-i omega t b^dag b) D_b(beta(t))`` with ``D_b(beta) = exp(beta b^dag - beta^* b)``.

    Equal to ``exp(-i H_+ t)`` up to a global phase.

    Raises
    ------
    ValueError
        If ``omega == 0``; that limit is :func:`coupling_only_propagator`.
    CutoffError
        If the cutoff is too small for ``|beta| = 2g/omega``.
    """
    if params.omega <= 0:
        raise ValueError(
            "bosonic_propagator needs omega > 0; for omega = 0 use coupling_only_propagator "
            "(beta(t) -> -i g t)"
        )
    check_cutoff(2.0 * params.g / params.omega, spec)
    b, bd = composite_bosons(spec)
    beta = displacement_amplitude(params, t)
    D = hermitian_exp(1j * (beta * bd - beta.conjugate() * b), 1.0)
    # b^dag b = I (x) a^dag a is diagonal with integer entries
    occupation = np.tile(np.arange(spec.dim, dtype=float), 2)
    R = np.exp(-1j * params.omega * t * occupation)
    return Operator(R[:, None] * D.mat, "composite")


def cat_state(params: ModelParams, spec: FockSpec, t: float) -> StateVector:
    """Entangled cat state reached from ``|e, 0>`` under the bosonic Hamiltonian.

    ``(|e>|alpha_+> + |g>|alpha_->) / sqrt(2)`` with
    ``|alpha_pm> = (|alpha> pm |-alpha>) / sqrt(2)`` and ``alpha`` the
    :func:`branch_amplitude`. Built from series coherent states, not from a
    propagator.
    """
    if params.omega <= 0:
        raise ValueError("cat_state needs omega > 0; for omega = 0 use coupling_only_propagator")
    check_cutoff(2.0 * params.g / params.omega, spec)
    alpha = branch_amplitude(params, t)
    plus = coherent_state(alpha, spec).vec
    minus = coherent_state(-alpha, spec).vec
    cat_even = (plus + minus) / math.sqrt(2)
    cat_odd = (plus - minus) / math.sqrt(2)
    vec = (np.kron(spin_state("e").vec, cat_even) + np.kron(spin_state("g").vec, cat_odd)) / math.sqrt(2)
    return StateVector.normalized(vec, "composite")


def coupling_only_propagator(g: float, spec: FockSpec, t: float) -> Operator:
    """``U_RI(t) = exp(-i g t (b + b^dag))`` assembled branch by branch.

    ``b + b^dag = sigma_x (x) (a + a^dag)``, so with the sigma_x projectors
    ``|+><+|`` and ``|-><-|`` the propagator is
    ``|+><+| (x) D(-i g t) + |-><-| (x) D(i g t)``.
    """
    check_cutoff(abs(g * t), spec)
    beta_bar = -1j * g * t
    p = spin_state("+").vec
    m = spin_state("-").vec
    proj_p = np.outer(p, p.conj())
    proj_m = np.outer(m, m.conj())
    mat = np.kron(proj_p, displacement(beta_bar, spec).mat) + np.kron(proj_m, displacement(-beta_bar, spec).mat)
    return Operator(mat, "composite")


def quadrature_signal(traj: Trajectory, tol: float = 1e-10) -> np.ndarray:
    """``x(t) = <psi(t)| a + a^dag |psi(t)>`` for each stored composite state.

    Raises if any sample has an imaginary part above ``tol``.
    """
    if traj.states is None:
        raise ValueError("quadrature_signal needs a trajectory with stored states")
    if traj.space != "composite":
        raise ValueError("quadrature_signal needs composite states")
    spec = FockSpec(traj.states.shape[1] // 2 - 1)
    X = field_ops(spec)["x"].mat
    values = np.einsum("ki,ij,kj->k", traj.states.conj(), X, traj.states)
    worst = float(np.max(np.abs(values.imag)))
    if worst > tol:
        raise ValueError(f"<a + a^dag> has imaginary residue {worst:.3e}")
    return values.real.copy()


def _spin_step(omega0: float, lam: float, dt: float) -> np.ndarray:
    # exp(-i dt (omega0/2 sigma_z + lam sigma_x)) = cos(r dt) I - i sin(r dt) (h . sigma)/r
    r = math.hypot(0.5 * omega0, lam)
    if r == 0:
        return np.eye(2, dtype=complex)
    c, s = math.cos(r * dt), math.sin(r * dt) / r
    hz, hx = 0.5 * omega0, lam
    return np.array([[c - 1j * s * hz, -1j * s * hx], [-1j * s * hx, c + 1j * s * hz]])


def effective_fermionic_evolve(
    params: ModelParams,
    x_signal,
    psi0_spin: StateVector,
    grid: TimeGrid,
    drive_factor: float = DRIVE_FACTORS["paper_2g"],
) -> Trajectory:
    """Spin dynamics under ``omega0 s_z + c g x(t) sigma_x`` for a sampled drive.

    Parameters
    ----------
    x_signal : array_like
        Drive ``x(t)`` sampled on ``grid.times``.
    drive_factor : float
        ``c`` above; 2 is the default coefficient of the quadrature drive,
        1 is the direct substitution of ``<a + a^dag>``.

    Notes
    -----
    Each step ``[t_k, t_{k+1}]`` uses the exact 2x2 exponential of the
    Hamiltonian frozen at the step average ``(x_k + x_{k+1}) / 2``, which is
    second order in the step and exactly unitary.

    Returns
    -------
    Trajectory
        Spin states plus ``sigma_x``, ``sigma_y``, ``sigma_z`` and
        ``p_excited`` series.
    """
    times = grid.times
    x = np.asarray(x_signal, dtype=float)
    if x.shape != times.shape:
        raise ValueError(f"x_signal has {x.shape} samples, grid has {times.shape}")
    if psi0_spin.dim != 2:
        raise ValueError("psi0_spin must be a two-component spinor")
    states = np.empty((len(times), 2), dtype=complex)
    states[0] = psi0_spin.vec
    for k in range(len(times) - 1):
        lam = drive_factor * params.g * 0.5 * (x[k] + x[k + 1])
        states[k + 1] = _spin_step(params.omega0, lam, times[k + 1] - times[k]) @ states[k]
    ops = spin_ops()
    obs = {
        name: np.einsum("ki,ij,kj->k", states.conj(), ops[name].mat, states).real
        for name in ("sigma_x", "sigma_y", "sigma_z")
    }
    obs["p_excited"] = np.abs(states[:, 0]) ** 2
    return Trajectory(grid, states, obs, "spin")
