"""Run configuration for the command-line tool."""
from __future__ import annotations

import dataclasses
import json
import math
import re
from dataclasses import dataclass, field
from typing import Optional

from .dynamics import DRIVE_FACTORS, TimeGrid
from .hilbert import FockSpec, StateVector, coherent_state, product_state, spin_state
from .model import ModelParams

__all__ = ["ConfigError", "RunConfig", "EVOLVE_MODELS", "parse_initial", "initial_amplitude"]

EVOLVE_MODELS = (
    "full",
    "bosonic",
    "fermionic",
    "coupling",
    "transform",
    "bosonic-closed",
    "coupling-closed",
    "cat",
    "effective-fermionic",
)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    omega: float = 1.0
    omega0: float = 0.8
    g: float = 0.3
    cutoff: int = 64
    t0: float = 0.0
    t1: float = 2 * math.pi
    steps: int = 200
    initial: str = "e0"
    models: list[str] = field(default_factory=lambda: ["full", "bosonic"])
    out: Optional[str] = None
    tolerance: float = 1e-12
    exp_tolerance: float = 1e-10
    fermionic_factor: str = "paper_2g"
    vacuum_energy: bool = False
    include_states: bool = False

    @classmethod
    def from_dict(cls, data: dict) -> RunConfig:
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    @classmethod
    def from_json(cls, text: str) -> RunConfig:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        return cls.from_dict(data)

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True)

    def validate(self) -> None:
        try:
            self.params
            self.spec
            self.grid
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc
        if isinstance(self.models, str):
            self.models = [m.strip() for m in self.models.split(",") if m.strip()]
        if not self.models:
            raise ConfigError("at least one model kind is required")
        for m in self.models:
            if m not in EVOLVE_MODELS:
                raise ConfigError(f"unknown model {m!r}; choose from {', '.join(EVOLVE_MODELS)}")
        if self.fermionic_factor not in DRIVE_FACTORS:
            raise ConfigError(f"fermionic_factor must be one of {sorted(DRIVE_FACTORS)}")
        if not (self.tolerance > 0 and self.exp_tolerance > 0):
            raise ConfigError("tolerances must be positive")
        parse_initial(self.initial)

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.omega, self.omega0, self.g)

    @property
    def spec(self) -> FockSpec:
        return FockSpec(self.cutoff)

    @property
    def grid(self) -> TimeGrid:
        return TimeGrid(self.t0, self.t1, self.steps)


_FOCK_RE = re.compile(r"^([eg+-])(\d+)$")
_COH_RE = re.compile(r"^coh:([eg+-]):(.+)$")


def parse_initial(text: str) -> tuple[str, str, complex]:
    """Parse the initial-state mini-language.

    ``e0``, ``g3``, ``+0``, ``-2`` give a spin label and a Fock index;
    ``coh:e:0.5+0.1i`` gives a spin label and a coherent amplitude.
    Returns ``(spin_label, "fock" | "coherent", value)``.
    """
    text = text.strip()
    m = _FOCK_RE.match(text)
    if m:
        return m.group(1), "fock", complex(int(m.group(2)))
    m = _COH_RE.match(text)
    if m:
        raw = m.group(2).replace(" ", "").replace("i", "j")
        try:
            value = complex(raw)
        except ValueError:
            raise ConfigError(f"bad coherent amplitude {m.group(2)!r}") from None
        return m.group(1), "coherent", value
    raise ConfigError(f"bad initial state {text!r}; expected e.g. e0, g3, +0, coh:e:0.5+0.1i")


def initial_amplitude(text: str) -> float:
    """Coherent amplitude carried by the initial state (zero for Fock states)."""
    _, kind, value = parse_initial(text)
    return abs(value) if kind == "coherent" else 0.0


def build_initial(text: str, spec: FockSpec) -> StateVector:
    label, kind, value = parse_initial(text)
    if kind == "fock":
        n = int(value.real)
        if n > spec.cutoff:
            raise ConfigError(f"Fock index {n} exceeds cutoff {spec.cutoff}")
        return product_state(label, n, spec)
    return product_state(spin_state(label), coherent_state(value, spec), spec)
