"""Truncated Fock space, spin-1/2 operators and the composite spin-field space.

Conventions used throughout the package:

* hbar = 1, all frequencies and times dimensionless.
* Spin basis ordered ``(|e>, |g>)``; ``sigma_z = diag(+1, -1)``.
* Composite index is spin-major: ``index = s * (cutoff + 1) + n``, i.e.
  ``np.kron(spin_part, field_part)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

__all__ = [
    "CutoffError",
    "FockSpec",
    "Operator",
    "StateVector",
    "fock_ladder",
    "number_op",
    "field_parity",
    "spin_ops",
    "tensor",
    "identity",
    "spin_state",
    "fock_state",
    "product_state",
    "required_cutoff",
    "check_cutoff",
    "coherent_state",
    "displacement",
    "spectral_decomposition",
    "hermitian_exp",
]

SPACES = ("field", "spin", "composite")


class CutoffError(ValueError):
    """Raised when the Fock cutoff is too small for a requested coherent amplitude."""

    def __init__(self, beta_max: float, cutoff: int):
        self.beta_max = float(beta_max)
        self.cutoff = int(cutoff)
        self.required = required_cutoff(beta_max)
        super().__init__(
            f"Fock cutoff {cutoff} too small for coherent amplitude |beta|={beta_max:.6g}; "
            f"need cutoff >= {self.required}"
        )


@dataclass(frozen=True)
class FockSpec:
    """Truncation of the light mode to Fock states ``|0>, ..., |cutoff>``."""

    cutoff: int

    def __post_init__(self):
        if isinstance(self.cutoff, bool) or int(self.cutoff) != self.cutoff or self.cutoff < 1:
            raise ValueError(f"cutoff must be an integer >= 1, got {self.cutoff!r}")
        object.__setattr__(self, "cutoff", int(self.cutoff))

    @property
    def dim(self) -> int:
        return self.cutoff + 1

    @property
    def composite_dim(self) -> int:
        return 2 * (self.cutoff + 1)

    def dim_of(self, space: str) -> int:
        return {"field": self.dim, "spin": 2, "composite": self.composite_dim}[space]


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=complex, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Operator:
    """Dense complex matrix tagged with the space it acts on.

    Instances are immutable; arithmetic returns new operators. ``@`` applies
    the operator to another :class:`Operator` or to a :class:`StateVector`.
    """

    mat: np.ndarray
    space: str = "composite"

    def __post_init__(self):
        if self.space not in SPACES:
            raise ValueError(f"unknown space tag {self.space!r}")
        mat = _frozen(self.mat)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"operator matrix must be square, got shape {mat.shape}")
        if self.space == "spin" and mat.shape[0] != 2:
            raise ValueError("spin operators are 2x2")
        if self.space == "composite" and mat.shape[0] % 2:
            raise ValueError("composite dimension must be 2*(cutoff+1)")
        object.__setattr__(self, "mat", mat)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def dag(self) -> Operator:
        return Operator(self.mat.conj().T, self.space)

    def _check(self, other) -> None:
        if other.space != self.space or other.dim != self.dim:
            raise ValueError(
                f"dimension mismatch: {self.space}[{self.dim}] vs {other.space}[{other.dim}]"
            )

    def __matmul__(self, other):
        if isinstance(other, StateVector):
            self._check(other)
            return StateVector(self.mat @ other.vec, self.space, check_norm=False)
        if isinstance(other, Operator):
            self._check(other)
            return Operator(self.mat @ other.mat, self.space)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        self._check(other)
        return Operator(self.mat + other.mat, self.space)

    def __sub__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        self._check(other)
        return Operator(self.mat - other.mat, self.space)

    def __neg__(self):
        return Operator(-self.mat, self.space)

    def __mul__(self, scalar):
        if isinstance(scalar, (Operator, StateVector)):
            return NotImplemented
        return Operator(complex(scalar) * self.mat, self.space)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Operator(self.mat / complex(scalar), self.space)

    def max_abs(self) -> float:
        """Chebyshev (largest absolute entry) norm."""
        return float(np.max(np.abs(self.mat))) if self.mat.size else 0.0

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        return bool(np.max(np.abs(self.mat - self.mat.conj().T)) <= tol)

    def is_unitary(self, tol: float = 1e-10) -> bool:
        eye = np.eye(self.dim)
        return bool(np.max(np.abs(self.mat.conj().T @ self.mat - eye)) <= tol)

    def __repr__(self):
        return f"Operator(space={self.space!r}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized complex state vector tagged with its space.

    The constructor rejects vectors whose norm deviates from one by more
    than ``1e-10`` unless ``check_norm=False``; use :meth:`normalized` to
    build a state from an arbitrary nonzero vector.
    """

    vec: np.ndarray
    space: str = "composite"
    check_norm: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        if self.space not in SPACES:
            raise ValueError(f"unknown space tag {self.space!r}")
        vec = _frozen(self.vec)
        if vec.ndim != 1:
            raise ValueError("state vector must be one-dimensional")
        if self.space == "spin" and vec.shape[0] != 2:
            raise ValueError("spin states have two components")
        if self.check_norm:
            norm = np.linalg.norm(vec)
            if abs(norm - 1.0) > 1e-10:
                raise ValueError(f"state is not normalized (norm={norm!r})")
        object.__setattr__(self, "vec", vec)

    @classmethod
    def normalized(cls, vec, space: str = "composite") -> StateVector:
        vec = np.asarray(vec, dtype=complex)
        norm = np.linalg.norm(vec)
        if norm == 0:
            raise ValueError("cannot normalize the zero vector")
        return cls(vec / norm, space)

    @property
    def dim(self) -> int:
        return self.vec.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.vec))

    def inner(self, other: StateVector) -> complex:
        """``<self|other>``."""
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return complex(np.vdot(self.vec, other.vec))

    def __repr__(self):
        return f"StateVector(space={self.space!r}, dim={self.dim})"


# --- field and spin operators ---------------------------------------------


def fock_ladder(spec: FockSpec) -> tuple[Operator, Operator]:
    """Annihilation and creation operators on the truncated Fock space."""
    a = np.diag(np.sqrt(np.arange(1, spec.dim, dtype=float)), k=1)
    a_op = Operator(a, "field")
    return a_op, a_op.dag()


def number_op(spec: FockSpec) -> Operator:
    # built directly as diag(n) so the integer spectrum is exact
    return Operator(np.diag(np.arange(spec.dim, dtype=float)), "field")


def field_parity(spec: FockSpec) -> Operator:
    """``exp(i pi a^dag a) = diag((-1)^n)``."""
    signs = np.where(np.arange(spec.dim) % 2 == 0, 1.0, -1.0)
    return Operator(np.diag(signs), "field")


def spin_ops() -> dict[str, Operator]:
    """Spin-1/2 operators in the ``(|e>, |g>)`` basis.

    Returns a dict with keys ``sz, s_plus, s_minus, sx, sy, sigma_x,
    sigma_y, sigma_z, sigma_plus, sigma_minus``. ``sigma_plus`` and
    ``sigma_minus`` follow ``sigma_x +/- i sigma_y`` (so ``sigma_plus =
    2 s_plus``).
    """
    s_plus = np.array([[0, 1], [0, 0]], dtype=complex)
    s_minus = s_plus.T.copy()
    sigma_x = s_plus + s_minus
    sigma_y = -1j * (s_plus - s_minus)
    sigma_z = np.diag([1.0, -1.0]).astype(complex)
    mats = {
        "sz": 0.5 * sigma_z,
        "sx": 0.5 * sigma_x,
        "sy": 0.5 * sigma_y,
        "s_plus": s_plus,
        "s_minus": s_minus,
        "sigma_x": sigma_x,
        "sigma_y": sigma_y,
        "sigma_z": sigma_z,
        "sigma_plus": sigma_x + 1j * sigma_y,
        "sigma_minus": sigma_x - 1j * sigma_y,
    }
    return {k: Operator(v, "spin") for k, v in mats.items()}


def identity(space: str, spec: FockSpec | None = None) -> Operator:
    if space == "spin":
        return Operator(np.eye(2), "spin")
    if spec is None:
        raise ValueError(f"a FockSpec is needed for the {space} identity")
    return Operator(np.eye(spec.dim_of(space)), space)


def tensor(spin_part: Operator, field_part: Operator) -> Operator:
    """Composite operator ``spin_part (x) field_part`` in spin-major order."""
    if spin_part.space != "spin" or field_part.space != "field":
        raise ValueError(
            f"tensor expects (spin, field) operators, got ({spin_part.space}, {field_part.space})"
        )
    return Operator(np.kron(spin_part.mat, field_part.mat), "composite")


# --- states ----------------------------------------------------------------

_SQRT_HALF = 1.0 / math.sqrt(2.0)
_SPIN_VECTORS = {
    "e": (1.0, 0.0),
    "g": (0.0, 1.0),
    "+": (_SQRT_HALF, _SQRT_HALF),
    "-": (_SQRT_HALF, -_SQRT_HALF),
}


def spin_state(label: str) -> StateVector:
    """``|e>``, ``|g>`` or the sigma_x eigenstates ``|+>``, ``|->``."""
    try:
        return StateVector(np.array(_SPIN_VECTORS[label], dtype=complex), "spin")
    except KeyError:
        raise ValueError(f"unknown spin label {label!r}; use one of e, g, +, -") from None


def fock_state(n: int, spec: FockSpec) -> StateVector:
    if not 0 <= n <= spec.cutoff:
        raise ValueError(f"Fock index {n} outside 0..{spec.cutoff}")
    vec = np.zeros(spec.dim, dtype=complex)
    vec[n] = 1.0
    return StateVector(vec, "field")


def product_state(spin: Union[str, StateVector], field_state: Union[int, StateVector],
                  spec: FockSpec) -> StateVector:
    """Composite product state; ``spin`` may be a label, ``field_state`` a Fock index."""
    if isinstance(spin, str):
        spin = spin_state(spin)
    if isinstance(field_state, (int, np.integer)):
        field_state = fock_state(int(field_state), spec)
    if field_state.dim != spec.dim:
        raise ValueError("field state does not match the Fock spec")
    return StateVector(np.kron(spin.vec, field_state.vec), "composite")


def required_cutoff(beta_max: float) -> int:
    """Smallest cutoff with ``cutoff >= |beta|^2 + 8|beta| + 20``."""
    b = abs(beta_max)
    return int(math.ceil(b * b + 8.0 * b + 20.0 - 1e-12))


def check_cutoff(beta_max: float, spec: FockSpec) -> None:
    if spec.cutoff < required_cutoff(beta_max):
        raise CutoffError(abs(beta_max), spec.cutoff)


def coherent_state(beta: complex, spec: FockSpec) -> StateVector:
    """Truncated coherent state ``|beta>``, renormalized after truncation.

    Amplitudes are generated by the recurrence ``c_n = c_{n-1} beta / sqrt(n)``
    to avoid factorial overflow.

    Raises
    ------
    CutoffError
        If ``spec.cutoff < |beta|^2 + 8|beta| + 20``.
    """
    beta = complex(beta)
    check_cutoff(abs(beta), spec)
    c = np.empty(spec.dim, dtype=complex)
    c[0] = math.exp(-0.5 * abs(beta) ** 2)
    for n in range(1, spec.dim):
        c[n] = c[n - 1] * beta / math.sqrt(n)
    return StateVector.normalized(c, "field")


# --- exponentials ----------------------------------------------------------


def spectral_decomposition(H: Operator, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and eigenvectors of a Hermitian operator.

    The Hermitian part ``(H + H^dag)/2`` is diagonalized after checking the
    anti-Hermitian residue is below ``tol``.
    """
    if not H.is_hermitian(tol):
        resid = np.max(np.abs(H.mat - H.mat.conj().T))
        raise ValueError(f"operator is not Hermitian (max |H - H^dag| = {resid:.3e})")
    herm = 0.5 * (H.mat + H.mat.conj().T)
    return np.linalg.eigh(herm)


def hermitian_exp(H: Operator, tau: float) -> Operator:
    """``exp(-i H tau)`` through the eigendecomposition of ``H``."""
    w, v = spectral_decomposition(H)
    phases = np.exp(-1j * w * float(tau))
    return Operator((v * phases) @ v.conj().T, H.space)


def displacement(beta: complex, spec: FockSpec) -> Operator:
    """Field displacement ``D(beta) = exp(beta a^dag - beta^* a)``.

    Evaluated as ``exp(-i K)`` with the Hermitian ``K = i(beta a^dag - beta^* a)``.
    """
    beta = complex(beta)
    check_cutoff(abs(beta), spec)
    a, ad = fock_ladder(spec)
    K = 1j * (beta * ad - beta.conjugate() * a)
    return hermitian_exp(K, 1.0)
