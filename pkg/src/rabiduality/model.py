"""Quantum Rabi Hamiltonian, its JC/aJC pieces and the effective Hamiltonians."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .hilbert import FockSpec, Operator, fock_ladder, identity, number_op, spin_ops, tensor

__all__ = [
    "ModelParams",
    "HamiltonianSet",
    "EFFECTIVE_KINDS",
    "MODEL_KINDS",
    "build_qrm",
    "build_effective",
    "build_transform",
    "composite_bosons",
    "field_ops",
    "spin_composite",
    "hamiltonian",
]

EFFECTIVE_KINDS = ("bosonic", "fermionic", "coupling")
MODEL_KINDS = ("full", "bosonic", "fermionic", "coupling", "transform")


@dataclass(frozen=True)
class ModelParams:
    """Light-mode frequency ``omega``, transition frequency ``omega0``, coupling ``g``."""

    omega: float = 1.0
    omega0: float = 0.8
    g: float = 0.3

    def __post_init__(self):
        for name in ("omega", "omega0", "g"):
            value = float(getattr(self, name))
            if not np.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be a finite real >= 0, got {value!r}")
            object.__setattr__(self, name, value)

    @property
    def delta_plus(self) -> float:
        return self.omega + self.omega0

    @property
    def delta_minus(self) -> float:
        return self.omega - self.omega0


@dataclass(frozen=True, eq=False)
class HamiltonianSet:
    """All composite-space pieces of the Rabi Hamiltonian for one parameter set."""

    H: Operator
    H0: Operator
    HI: Operator
    H_JC_int: Operator
    H_aJC_int: Operator
    N_JC: Operator
    N_aJC: Operator
    H0_bar: Operator
    params: ModelParams

    @property
    def H_JC(self) -> Operator:
        return 0.5 * self.params.delta_plus * self.N_JC + self.H_JC_int

    @property
    def H_aJC(self) -> Operator:
        return 0.5 * self.params.delta_minus * self.N_aJC + self.H_aJC_int

    @property
    def H_bar_plus(self) -> Operator:
        """Conjugate ``H0_bar + HI`` reached by the symmetric duality map."""
        return self.H0_bar + self.HI

    @property
    def H_bar_minus(self) -> Operator:
        """Conjugate ``H0_bar - HI`` reached by the antisymmetric duality map."""
        return self.H0_bar - self.HI


@lru_cache(maxsize=None)
def field_ops(spec: FockSpec) -> dict[str, Operator]:
    """Field operators lifted to the composite space (``I_2 (x) X``)."""
    a, ad = fock_ladder(spec)
    eye2 = identity("spin")
    return {
        "a": tensor(eye2, a),
        "a_dag": tensor(eye2, ad),
        "n": tensor(eye2, number_op(spec)),
        "x": tensor(eye2, a + ad),
    }


@lru_cache(maxsize=None)
def spin_composite(spec: FockSpec) -> dict[str, Operator]:
    """Spin operators lifted to the composite space (``S (x) I_{N+1}``)."""
    eye_f = identity("field", spec)
    return {k: tensor(v, eye_f) for k, v in spin_ops().items()}


@lru_cache(maxsize=None)
def _build_qrm(params: ModelParams, spec: FockSpec, vacuum_energy: bool) -> HamiltonianSet:
    f = field_ops(spec)
    s = spin_composite(spec)
    a, ad, n = f["a"], f["a_dag"], f["n"]
    sz, sp, sm = s["sz"], s["s_plus"], s["s_minus"]
    w, w0, g = params.omega, params.omega0, params.g

    H0 = w * n + w0 * sz
    if vacuum_energy:
        H0 = H0 + 0.5 * w * identity("composite", spec)
    HI = g * ((a + ad) @ (sp + sm))
    N_JC = n + sz
    N_aJC = n - sz
    H0_bar = 0.5 * (params.delta_plus * N_aJC + params.delta_minus * N_JC)
    if vacuum_energy:
        H0_bar = H0_bar + 0.5 * w * identity("composite", spec)
    return HamiltonianSet(
        H=H0 + HI,
        H0=H0,
        HI=HI,
        H_JC_int=g * (ad @ sm + a @ sp),
        H_aJC_int=g * (a @ sm + ad @ sp),
        N_JC=N_JC,
        N_aJC=N_aJC,
        H0_bar=H0_bar,
        params=params,
    )


def build_qrm(params: ModelParams, spec: FockSpec, vacuum_energy: bool = False) -> HamiltonianSet:
    """Rabi Hamiltonian ``H = omega a^dag a + omega0 s_z + g (a + a^dag)(s_+ + s_-)``.

    Parameters
    ----------
    params, spec
        Model parameters and Fock truncation. Results are cached per pair.
    vacuum_energy
        Add the zero-point term ``omega/2`` to ``H0`` (and ``H0_bar``).

    Returns
    -------
    HamiltonianSet
        ``H, H0, HI``, the JC / aJC interaction pieces, both excitation
        number operators and the duality conjugate ``H0_bar``.
    """
    return _build_qrm(params, spec, bool(vacuum_energy))


@lru_cache(maxsize=None)
def composite_bosons(spec: FockSpec) -> tuple[Operator, Operator]:
    """Composite bosons ``b = sigma_x (x) a`` and ``b^dag = sigma_x (x) a^dag``."""
    a, ad = fock_ladder(spec)
    sx = spin_ops()["sigma_x"]
    return tensor(sx, a), tensor(sx, ad)


def build_effective(params: ModelParams, spec: FockSpec, kind: str) -> Operator:
    """Effective Hamiltonian of the given kind.

    ``bosonic``: ``omega a^dag a + g (a + a^dag) sigma_x``;
    ``fermionic``: ``omega0 s_z + g (a + a^dag) sigma_x``;
    ``coupling``: the interaction ``HI`` alone.
    """
    hs = build_qrm(params, spec)
    f = field_ops(spec)
    s = spin_composite(spec)
    if kind == "bosonic":
        return params.omega * f["n"] + hs.HI
    if kind == "fermionic":
        return params.omega0 * s["sz"] + hs.HI
    if kind == "coupling":
        return hs.HI
    raise ValueError(f"unknown effective kind {kind!r}; expected one of {EFFECTIVE_KINDS}")


def build_transform(params: ModelParams, spec: FockSpec) -> Operator:
    """Interaction-reversed transform ``H0 - HI``."""
    hs = build_qrm(params, spec)
    return hs.H0 - hs.HI


def hamiltonian(params: ModelParams, spec: FockSpec, kind: str) -> Operator:
    """Dispatch over ``full``, ``bosonic``, ``fermionic``, ``coupling``, ``transform``."""
    if kind == "full":
        return build_qrm(params, spec).H
    if kind == "transform":
        return build_transform(params, spec)
    if kind in EFFECTIVE_KINDS:
        return build_effective(params, spec, kind)
    raise ValueError(f"unknown model kind {kind!r}; expected one of {MODEL_KINDS}")
