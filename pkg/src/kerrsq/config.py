"""Run configuration: JSON documents validated by pydantic, with dotted overrides."""

from __future__ import annotations

import json
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .errors import ConfigError
from .fock_oracle import ModeLattice
from .kernel import ResponseKernel
from .nlo_phase import InteractionParams
from .pulse import PulseSpec
from .spectra import SWEEP_AXES, SpectrumRequest


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class Linspace(_Strict):
    start: float
    stop: float
    num: int = Field(ge=1, le=1_000_000)

    def values(self) -> list:
        return [float(x) for x in np.linspace(self.start, self.stop, self.num)]


Grid = Union[List[float], Linspace]


def _grid_values(grid: Grid) -> list:
    return grid.values() if isinstance(grid, Linspace) else [float(x) for x in grid]


class ParamsSection(_Strict):
    gamma1: float = Field(1e-3, ge=0)
    gamma2: float = Field(1e-3, ge=0)
    gamma_x: float = Field(5e-4, ge=0)


class PulseSection(_Strict):
    shape: Literal["gaussian", "sech", "flat-top", "tabulated"] = "gaussian"
    tau_p: float = Field(100.0, gt=0)
    n_peak: float = Field(0.0, ge=0)
    linear_phase: Union[float, List[float]] = 0.0
    samples: Optional[Tuple[List[float], List[float]]] = None

    def build(self) -> PulseSpec:
        phase = tuple(self.linear_phase) if isinstance(self.linear_phase, list) else self.linear_phase
        samples = None if self.samples is None else (tuple(self.samples[0]), tuple(self.samples[1]))
        return PulseSpec(shape=self.shape, tau_p=self.tau_p, n_peak=self.n_peak,
                         linear_phase=phase, samples=samples)


class KernelSection(_Strict):
    kind: Literal["exponential", "delta"] = "exponential"
    tau_r: float = Field(1.0, gt=0)


class SpectraSection(_Strict):
    t: float = 0.0
    Omega_grid: Grid = Linspace(start=0.0, stop=3.0, num=301)
    Omega0: Optional[float] = None
    phase_mode: Literal["optimal", "explicit"] = "optimal"


class SweepSection(_Strict):
    axis: str = "intensity_ratio"
    values: Grid = [0.0, 2.0, 3.0, 5.0, 8.0]

    @field_validator("axis")
    @classmethod
    def _known_axis(cls, value):
        if value not in SWEEP_AXES:
            raise ValueError(f"axis must be one of {SWEEP_AXES}")
        return value


class LatticeSection(_Strict):
    probe_alpha: List[float] = [0.9, 0.6]
    control_alpha: List[float] = [0.8, 0.5]
    n_max: int = Field(12, ge=1)
    dt: float = Field(1.0, gt=0)
    gamma: float = Field(0.2, ge=0)
    gamma2: float = Field(0.2, ge=0)
    gamma_x: float = Field(0.1, ge=0)


class DftSection(_Strict):
    phi01: float = Field(2.0, ge=0)
    ratios: List[float] = [0.0, 2.0, 3.0, 5.0, 8.0]
    Omega0: float = 0.0
    half_window: float = Field(40.0, gt=0)
    step: float = Field(0.01, gt=0)
    tolerance: float = Field(1e-6, gt=0)


class ConvolutionSection(_Strict):
    tau_p_values: List[float] = [50.0, 100.0, 200.0, 400.0]
    reference_tau_p: float = 100.0
    gamma: float = Field(1e-3, gt=0)
    phi0: float = Field(2.0, gt=0)
    tolerance: float = Field(1e-2, gt=0)


class RunConfig(_Strict):
    params: ParamsSection = ParamsSection()
    pulse1: PulseSection = PulseSection(n_peak=1000.0)
    pulse2: PulseSection = PulseSection()
    kernel: KernelSection = KernelSection()
    spectra: SpectraSection = SpectraSection()
    sweep: SweepSection = SweepSection()
    lattice: LatticeSection = LatticeSection()
    dft: DftSection = DftSection()
    convolution: ConvolutionSection = ConvolutionSection()

    def kernel_spec(self) -> ResponseKernel:
        return ResponseKernel(tau_r=self.kernel.tau_r, kind=self.kernel.kind)

    def interaction(self) -> InteractionParams:
        return InteractionParams(**self.params.model_dump())

    def spectrum_request(self) -> SpectrumRequest:
        return SpectrumRequest(
            params=self.interaction(),
            pulse1=self.pulse1.build(),
            pulse2=self.pulse2.build(),
            t=self.spectra.t,
            Omega_grid=tuple(_grid_values(self.spectra.Omega_grid)),
            Omega0=self.spectra.Omega0,
            phase_mode=self.spectra.phase_mode,
            kernel=self.kernel_spec(),
        )

    def mode_lattice(self) -> ModeLattice:
        rows = [self.lattice.probe_alpha]
        if self.lattice.control_alpha:
            rows.append(self.lattice.control_alpha)
        return ModeLattice(alpha=rows, n_max=self.lattice.n_max, dt=self.lattice.dt)

    def sweep_values(self) -> list:
        return _grid_values(self.sweep.values)


def _parse_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def apply_override(doc: dict, assignment: str) -> dict:
    """Set one leaf of ``doc`` from ``dotted.path=value``; the value is read as JSON if possible."""
    path, sep, raw = assignment.partition("=")
    if not sep or not path:
        raise ConfigError(f"override must look like section.key=value, got {assignment!r}")
    keys = path.split(".")
    node = doc
    for key in keys[:-1]:
        child = node.setdefault(key, {})
        if not isinstance(child, dict):
            raise ConfigError(f"{path}: {key} is not a section")
        node = child
    node[keys[-1]] = _parse_value(raw)
    return doc


def load_config(path: Optional[str] = None, overrides=()) -> RunConfig:
    """Read, override and validate a configuration; nothing is computed here."""
    doc = {}
    if path is not None:
        try:
            doc = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if not isinstance(doc, dict):
            raise ConfigError("config document must be a JSON object")
    for assignment in overrides:
        apply_override(doc, assignment)
    try:
        cfg = RunConfig.model_validate(doc)
        # build the domain objects once so their own checks run up front
        cfg.spectrum_request()
        cfg.mode_lattice()
    except ValidationError as exc:
        raise ConfigError(str(exc)) from exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return cfg
