"""Parity and duality operators, conjugation and the identity catalogue.

The parity/duality operators are ``Pi_j = sigma_j (x) P`` with the field
parity ``P = diag((-1)^n)``. Each is Hermitian, unitary and squares to the
identity, so conjugation ``U^dag A U`` by any of them is an exact sign
shuffle in floating point; the algebraic rows of :func:`verify_algebra`
therefore come out at (or within a few ulps of) zero.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .hilbert import FockSpec, Operator, field_parity, identity, number_op, spin_ops, tensor
from .model import (
    ModelParams,
    build_effective,
    build_qrm,
    build_transform,
    composite_bosons,
    field_ops,
    spin_composite,
)

__all__ = [
    "SymmetrySet",
    "ResidualRow",
    "ResidualReport",
    "build_symmetry",
    "exp_generator",
    "conjugate",
    "phase_aligned_residual",
    "verify_algebra",
    "parity_sectors",
    "parity_labels",
    "ALGEBRAIC_TOL",
    "EXPONENTIAL_TOL",
]

ALGEBRAIC_TOL = 1e-12
EXPONENTIAL_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SymmetrySet:
    P: Operator  # field parity lifted to the composite space
    Pi_z: Operator
    Pi_y: Operator
    Pi_x: Operator
    Pi_plus: Operator
    Pi_minus: Operator

    def pi(self, j: str) -> Operator:
        return {"z": self.Pi_z, "y": self.Pi_y, "x": self.Pi_x}[j]


def build_symmetry(spec: FockSpec) -> SymmetrySet:
    """``P`` and ``Pi_j = sigma_j (x) P`` for ``j`` in ``z, y, x, +, -``."""
    P = field_parity(spec)
    s = spin_ops()
    return SymmetrySet(
        P=tensor(identity("spin"), P),
        Pi_z=tensor(s["sigma_z"], P),
        Pi_y=tensor(s["sigma_y"], P),
        Pi_x=tensor(s["sigma_x"], P),
        Pi_plus=tensor(s["sigma_plus"], P),
        Pi_minus=tensor(s["sigma_minus"], P),
    )


_GENERATOR_SPIN = {"N_JC": ("sz", 1.0), "N_aJC": ("sz", -1.0), "N_y": ("sy", 1.0), "N_x": ("sx", 1.0)}


def exp_generator(which: str, spec: FockSpec, theta: float = math.pi) -> Operator:
    """``exp(i theta N)`` for ``N`` in ``N_JC, N_aJC, N_y, N_x``.

    ``N_y = a^dag a + s_y`` and ``N_x = a^dag a + s_x``. Computed by
    diagonalizing ``N`` (no closed form is used).
    """
    try:
        spin_key, sign = _GENERATOR_SPIN[which]
    except KeyError:
        raise ValueError(f"unknown generator {which!r}; use one of {sorted(_GENERATOR_SPIN)}") from None
    N = tensor(identity("spin"), number_op(spec)) + sign * tensor(
        spin_ops()[spin_key], identity("field", spec)
    )
    w, v = np.linalg.eigh(N.mat)
    return Operator((v * np.exp(1j * theta * w)) @ v.conj().T, "composite")


def conjugate(U: Operator, A: Operator, tol: float = 1e-10) -> Operator:
    """``U^dag A U`` for unitary ``U``."""
    if U.dim != A.dim or U.space != A.space:
        raise ValueError("dimension mismatch between U and A")
    if not U.is_unitary(tol):
        raise ValueError("conjugation requires a unitary operator")
    return U.dag() @ A @ U


def phase_aligned_residual(A: Operator, B: Operator) -> tuple[complex, float]:
    """Global phase ``c`` with ``A ~ c B`` and the residual ``max|A - c B|``.

    The phase is taken from the largest entry of ``B`` and rounded onto the
    unit circle.
    """
    idx = np.unravel_index(np.argmax(np.abs(B.mat)), B.mat.shape)
    if B.mat[idx] == 0:
        return 1.0 + 0j, A.max_abs()
    ratio = A.mat[idx] / B.mat[idx]
    phase = ratio / abs(ratio) if ratio != 0 else 1.0 + 0j
    return complex(phase), float(np.max(np.abs(A.mat - phase * B.mat)))


# --- residual report -------------------------------------------------------


@dataclass(frozen=True)
class ResidualRow:
    identity: str
    residual: float
    tolerance: float
    group: str = ""
    note: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)


@dataclass
class ResidualReport:
    """Named identity residuals with pass/fail flags."""

    entries: list[ResidualRow] = field(default_factory=list)

    def add(self, name: str, residual: float, tolerance: float, group: str = "", note: str = ""):
        self.entries.append(ResidualRow(name, float(residual), float(tolerance), group, note))

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, name: str) -> ResidualRow:
        for row in self.entries:
            if row.identity == name:
                return row
        raise KeyError(name)

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.entries)

    @property
    def failures(self) -> list[ResidualRow]:
        return [r for r in self.entries if not r.passed]

    def worst(self) -> ResidualRow:
        """Row with the largest residual-to-tolerance ratio."""
        return max(self.entries, key=lambda r: r.residual / r.tolerance if r.tolerance else math.inf)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["identity", "residual", "tolerance", "passed"])
        for r in self.entries:
            writer.writerow([r.identity, f"{r.residual:.17g}", f"{r.tolerance:.17g}", str(r.passed).lower()])
        return buf.getvalue()

    def to_text(self) -> str:
        width = max((len(r.identity) for r in self.entries), default=8)
        lines = []
        for r in self.entries:
            flag = "PASS" if r.passed else "FAIL"
            lines.append(f"{flag}  {r.identity:<{width}}  {r.residual:.3e}  (tol {r.tolerance:.0e})")
        n_pass = sum(r.passed for r in self.entries)
        lines.append(f"{n_pass}/{len(self.entries)} identities passed")
        if self.entries:
            w = self.worst()
            lines.append(f"worst: {w.identity} residual {w.residual:.3e} (tol {w.tolerance:.0e})")
        return "\n".join(lines)


def _diff(lhs: Operator, rhs: Operator) -> float:
    return (lhs - rhs).max_abs()


def verify_algebra(
    params: ModelParams,
    spec: FockSpec,
    tol: float = ALGEBRAIC_TOL,
    exp_tol: float = EXPONENTIAL_TOL,
) -> ResidualReport:
    """Evaluate every operator identity of the parity/duality construction.

    Each row records ``max|LHS - RHS|``. Rows built from a numerical matrix
    exponential (the generator checks) use ``exp_tol``; all others ``tol``.
    Failures are reported, never raised.
    """
    rep = ResidualReport()
    hs = build_qrm(params, spec)
    sym = build_symmetry(spec)
    f = field_ops(spec)
    s = spin_composite(spec)
    eye = identity("composite", spec)
    zero = 0.0 * eye
    w, w0, g = params.omega, params.omega0, params.g
    H_plus = build_effective(params, spec, "bosonic")
    H_minus = build_effective(params, spec, "fermionic")
    H_RI = build_effective(params, spec, "coupling")
    H_tilde = build_transform(params, spec)
    b, bd = composite_bosons(spec)
    Pi = {"z": sym.Pi_z, "y": sym.Pi_y, "x": sym.Pi_x}
    P2 = sym.P @ sym.P

    def check(name, lhs, rhs, group, t=tol, note=""):
        rep.add(name, _diff(lhs, rhs), t, group, note)

    # decomposition of H into free/interaction and JC/aJC pieces
    g_dec = "decomposition"
    check("H = H0 + HI", hs.H, hs.H0 + hs.HI, g_dec)
    check("H0 = (d+ N_JC + d- N_aJC)/2", hs.H0,
          0.5 * (params.delta_plus * hs.N_JC + params.delta_minus * hs.N_aJC), g_dec)
    check("HI = H_JC_int + H_aJC_int", hs.HI, hs.H_JC_int + hs.H_aJC_int, g_dec)
    check("H = H_JC + H_aJC", hs.H, hs.H_JC + hs.H_aJC, g_dec)
    check("N_JC + N_aJC = 2 n", hs.N_JC + hs.N_aJC, 2 * f["n"], g_dec)
    check("N_JC - N_aJC = 2 s_z", hs.N_JC - hs.N_aJC, 2 * s["sz"], g_dec)

    # closed SU(2) algebra
    g_alg = "su2"
    eps = {("x", "y"): ("z", 1), ("y", "z"): ("x", 1), ("z", "x"): ("y", 1)}
    for j, k in [("z", "z"), ("y", "y"), ("x", "x"), ("z", "y"), ("z", "x"), ("y", "x")]:
        rhs = 2 * eye if j == k else zero
        check(f"{{Pi_{j}, Pi_{k}}} = {2 if j == k else 0}", Pi[j] @ Pi[k] + Pi[k] @ Pi[j], rhs, g_alg)
    for (j, k), (l, sign) in eps.items():
        lhs = Pi[j] @ Pi[k] - Pi[k] @ Pi[j]
        check(f"[Pi_{j}, Pi_{k}] = {'-' if sign < 0 else ''}2i Pi_{l} P", lhs,
              (2j * sign) * (Pi[l] @ sym.P), g_alg)
    check("P^2 = I", P2, eye, g_alg)
    for j in "zyx":
        check(f"Pi_{j} Hermitian", Pi[j].dag(), Pi[j], g_alg)
        check(f"Pi_{j}^dag Pi_{j} = I", Pi[j].dag() @ Pi[j], eye, g_alg)
    check("[Pi_z, Pi_+] = 2 Pi_+ P", sym.Pi_z @ sym.Pi_plus - sym.Pi_plus @ sym.Pi_z,
          2 * (sym.Pi_plus @ sym.P), g_alg)
    check("[Pi_z, Pi_-] = -2 Pi_- P", sym.Pi_z @ sym.Pi_minus - sym.Pi_minus @ sym.Pi_z,
          -2 * (sym.Pi_minus @ sym.P), g_alg)
    check("[Pi_+, Pi_-] = 4 Pi_z P", sym.Pi_plus @ sym.Pi_minus - sym.Pi_minus @ sym.Pi_plus,
          4 * (sym.Pi_z @ sym.P), g_alg)

    # transformations of the mode and spin operators
    g_tr = "operator-maps"
    a, ad, sz, sp, sm = f["a"], f["a_dag"], s["sz"], s["s_plus"], s["s_minus"]
    maps = {
        "z": [("a", a, -a), ("a^dag", ad, -ad), ("s_z", sz, sz), ("s_-", sm, -sm), ("s_+", sp, -sp)],
        "y": [("a", a, -a), ("a^dag", ad, -ad), ("s_z", sz, -sz), ("s_-", sm, -sp), ("s_+", sp, -sm)],
        "x": [("a", a, -a), ("a^dag", ad, -ad), ("s_z", sz, -sz), ("s_-", sm, sp), ("s_+", sp, sm)],
    }
    rhs_names = {
        ("z", "s_-"): "-s_-", ("z", "s_+"): "-s_+", ("y", "s_-"): "-s_+", ("y", "s_+"): "-s_-",
        ("x", "s_-"): "s_+", ("x", "s_+"): "s_-",
    }
    for j, rows in maps.items():
        for name, op, rhs in rows:
            if name.startswith("a"):
                rname = f"-{name}"
            elif name == "s_z":
                rname = "s_z" if j == "z" else "-s_z"
            else:
                rname = rhs_names[(j, name)]
            check(f"Pi_{j}^dag {name} Pi_{j} = {rname}", conjugate(Pi[j], op), rhs, g_tr)

    # parity invariance
    g_par = "parity"
    for name, op in [("N_JC", hs.N_JC), ("N_aJC", hs.N_aJC), ("H_JC_int", hs.H_JC_int),
                     ("H_aJC_int", hs.H_aJC_int), ("H0", hs.H0), ("HI", hs.HI), ("H", hs.H)]:
        check(f"Pi_z^dag {name} Pi_z = {name}", conjugate(sym.Pi_z, op), op, g_par)
    check("[Pi_z, H] = 0", sym.Pi_z @ hs.H - hs.H @ sym.Pi_z, zero, g_par)

    # duality maps of the free part and of the interaction pieces
    g_du = "duality"
    for j in "yx":
        check(f"Pi_{j}^dag N_JC Pi_{j} = N_aJC", conjugate(Pi[j], hs.N_JC), hs.N_aJC, g_du)
        check(f"Pi_{j}^dag N_aJC Pi_{j} = N_JC", conjugate(Pi[j], hs.N_aJC), hs.N_JC, g_du)
        check(f"Pi_{j}^dag H0 Pi_{j} = H0_bar", conjugate(Pi[j], hs.H0), hs.H0_bar, g_du)
        check(f"Pi_{j}^dag H0_bar Pi_{j} = H0", conjugate(Pi[j], hs.H0_bar), hs.H0, g_du)
    check("Pi_y^dag H_JC_int Pi_y = H_aJC_int", conjugate(sym.Pi_y, hs.H_JC_int), hs.H_aJC_int, g_du)
    check("Pi_y^dag H_aJC_int Pi_y = H_JC_int", conjugate(sym.Pi_y, hs.H_aJC_int), hs.H_JC_int, g_du)
    check("Pi_x^dag H_JC_int Pi_x = -H_aJC_int", conjugate(sym.Pi_x, hs.H_JC_int), -hs.H_aJC_int, g_du)
    check("Pi_x^dag H_aJC_int Pi_x = -H_JC_int", conjugate(sym.Pi_x, hs.H_aJC_int), -hs.H_JC_int, g_du)
    check("H0_bar = omega n - omega0 s_z", hs.H0_bar, w * f["n"] - w0 * sz, g_du)

    # symmetric conjugation and the bosonic Hamiltonian
    g_sym = "symmetric"
    check("Pi_y^dag HI Pi_y = HI", conjugate(sym.Pi_y, hs.HI), hs.HI, g_sym)
    check("[Pi_y, HI] = 0", sym.Pi_y @ hs.HI - hs.HI @ sym.Pi_y, zero, g_sym)
    check("Pi_y^dag H Pi_y = H_bar+", conjugate(sym.Pi_y, hs.H), hs.H_bar_plus, g_sym)
    check("Pi_y^dag H_bar+ Pi_y = H", conjugate(sym.Pi_y, hs.H_bar_plus), hs.H, g_sym)
    check("(H + H_bar+)/2 = H+", 0.5 * (hs.H + hs.H_bar_plus), H_plus, g_sym)
    check("H+ = omega n + g x sigma_x", H_plus, w * f["n"] + g * (f["x"] @ s["sigma_x"]), g_sym)
    check("[Pi_y, H+] = 0", sym.Pi_y @ H_plus - H_plus @ sym.Pi_y, zero, g_sym)
    check("Pi_y^dag H+ Pi_y = H+", conjugate(sym.Pi_y, H_plus), H_plus, g_sym)
    check("b^dag = (b)^dag", bd, b.dag(), g_sym)
    n_max = spec.cutoff
    edge = np.zeros((spec.dim, spec.dim))
    edge[n_max, n_max] = 1.0
    edge_op = tensor(identity("spin"), Operator(edge, "field"))
    check("[b, b^dag] = I - (N+1)|N><N| (truncated)", b @ bd - bd @ b, eye - (n_max + 1) * edge_op, g_sym,
          note="equals I below the cutoff")
    check("[b, b] = 0", b @ b - b @ b, zero, g_sym)
    check("[b^dag, b^dag] = 0", bd @ bd - bd @ bd, zero, g_sym)
    check("b^dag b = a^dag a", bd @ b, f["n"], g_sym)
    check("H+ = omega b^dag b + g (b + b^dag)", H_plus, w * (bd @ b) + g * (b + bd), g_sym)

    # antisymmetric conjugation and the fermionic Hamiltonian
    g_anti = "antisymmetric"
    check("Pi_x^dag HI Pi_x = -HI", conjugate(sym.Pi_x, hs.HI), -hs.HI, g_anti)
    check("{Pi_x, HI} = 0", sym.Pi_x @ hs.HI + hs.HI @ sym.Pi_x, zero, g_anti)
    check("Pi_x^dag H Pi_x = H_bar-", conjugate(sym.Pi_x, hs.H), hs.H_bar_minus, g_anti)
    check("Pi_x^dag H_bar- Pi_x = H", conjugate(sym.Pi_x, hs.H_bar_minus), hs.H, g_anti)
    check("(H - H_bar-)/2 = H-", 0.5 * (hs.H - hs.H_bar_minus), H_minus, g_anti)
    check("H- = omega0 s_z + g x sigma_x", H_minus, w0 * sz + g * (f["x"] @ s["sigma_x"]), g_anti)
    check("Pi_x^dag H- Pi_x = -H-", conjugate(sym.Pi_x, H_minus), -H_minus, g_anti)
    check("{Pi_x, H-} = 0", sym.Pi_x @ H_minus + H_minus @ sym.Pi_x, zero, g_anti)

    # product transform and the coupling-only Hamiltonian
    g_yx = "coupling-only"
    Pi_yx = sym.Pi_y @ sym.Pi_x
    Pi_xy = sym.Pi_x @ sym.Pi_y
    check("Pi_yx^dag H Pi_yx = H~", conjugate(Pi_yx, hs.H), H_tilde, g_yx)
    check("Pi_yx^dag H~ Pi_yx = H", conjugate(Pi_yx, H_tilde), hs.H, g_yx)
    check("Pi_xy^dag H Pi_xy = H~", conjugate(Pi_xy, hs.H), H_tilde, g_yx)
    check("Pi_xy^dag H~ Pi_xy = H", conjugate(Pi_xy, H_tilde), hs.H, g_yx)
    check("Pi_yx and Pi_xy conjugations agree", conjugate(Pi_yx, hs.H), conjugate(Pi_xy, hs.H), g_yx)
    check("H~ = H0 - HI", H_tilde, hs.H0 - hs.HI, g_yx)
    check("(H - H~)/2 = H_RI = HI", 0.5 * (hs.H - H_tilde), H_RI, g_yx)

    # generator exponentials, equal to Pi_j up to a global phase
    g_exp = "generators"
    for which, target in [("N_JC", sym.Pi_z), ("N_aJC", sym.Pi_z), ("N_y", sym.Pi_y), ("N_x", sym.Pi_x)]:
        U = exp_generator(which, spec)
        phase, resid = phase_aligned_residual(U, target)
        j = {"N_JC": "z", "N_aJC": "z", "N_y": "y", "N_x": "x"}[which]
        rep.add(f"exp(i pi {which}) ~ Pi_{j} (phase removed)", resid, exp_tol, g_exp,
                note=f"global phase {phase.real:+.12f}{phase.imag:+.12f}i")
    U_jc = exp_generator("N_JC", spec)
    U_ajc = exp_generator("N_aJC", spec)
    _, resid = phase_aligned_residual(U_jc, U_ajc)
    rep.add("exp(i pi N_JC) ~ exp(i pi N_aJC) (phase removed)", resid, exp_tol, g_exp)
    return rep


# --- parity sectors --------------------------------------------------------


def parity_labels(spec: FockSpec) -> np.ndarray:
    """Pi_z eigenvalue of every composite basis state: ``+(-1)^n`` for e, ``-(-1)^n`` for g."""
    n = np.arange(spec.dim)
    field_sign = np.where(n % 2 == 0, 1, -1)
    return np.concatenate([field_sign, -field_sign])


def parity_sectors(A: Operator, spec: FockSpec) -> tuple[Operator, Operator, float]:
    """Split ``A`` by Pi_z eigenvalue.

    Returns the ``+1`` block, the ``-1`` block (basis states kept in
    ascending composite order inside each sector) and the largest absolute
    entry of the off-diagonal coupling blocks.
    """
    if A.space != "composite" or A.dim != spec.composite_dim:
        raise ValueError("parity_sectors needs a composite operator matching the spec")
    labels = parity_labels(spec)
    plus = np.flatnonzero(labels == 1)
    minus = np.flatnonzero(labels == -1)
    M = A.mat
    cross = max(np.max(np.abs(M[np.ix_(plus, minus)])), np.max(np.abs(M[np.ix_(minus, plus)])))
    # each sector spans cutoff+1 states, the dimension of the field space
    return (
        Operator(M[np.ix_(plus, plus)], "field"),
        Operator(M[np.ix_(minus, minus)], "field"),
        float(cross),
    )
