"""Closed-form quadrature fluctuation spectra and parameter sweeps.

Spectral densities are normalized so that a coherent state sits at the
shot-noise level 1/4. Frequencies are reduced, ``Omega = omega * tau_r``.
"""

from __future__ import annotations

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import ConfigError, DegenerateInputError
from .kernel import EXPONENTIAL_KERNEL, ResponseKernel, spectral_weight
from .nlo_phase import InteractionParams, NonlinearPhases, phases_quasistatic, regime_warnings
from .pulse import PulseSpec

SHOT_NOISE = 0.25
PHASE_MODES = ("optimal", "explicit")
SWEEP_AXES = ("Omega", "Omega0", "phi01", "intensity_ratio", "t")


def spectrum_closed(phases: NonlinearPhases, Omega, kernel: ResponseKernel = EXPONENTIAL_KERNEL):
    """``(S_X, S_Y)`` at reduced frequency ``Omega`` for the phase stored in ``phases``."""
    w = spectral_weight(kernel, Omega)
    big = phases.Phi_tilde
    spm = 2.0 * phases.phi1 * w * math.sin(2.0 * big)
    pair = 4.0 * phases.phi_star * w * w
    s_x = 0.25 * (1.0 - spm + pair * math.sin(big) ** 2)
    s_y = 0.25 * (1.0 + spm + pair * math.cos(big) ** 2)
    return s_x, s_y


def optimal_phase(phases: NonlinearPhases, Omega0: float = 0.0,
                  kernel: ResponseKernel = EXPONENTIAL_KERNEL) -> float:
    """Linear probe phase minimizing ``S_X`` at ``Omega0`` (principal arctan branch)."""
    if phases.phi1 == 0.0 and phases.phi_star == 0.0:
        raise DegenerateInputError("phi1 = phi_star = 0: every input phase is optimal")
    w0 = float(spectral_weight(kernel, Omega0))
    # both arguments are non-negative, so atan2 is the principal arctan of their ratio
    half_angle = 0.5 * math.atan2(phases.phi1, phases.phi_star * w0)
    return half_angle - phases.phi1 - phases.phi2x


def _root(phases: NonlinearPhases, w0: float) -> float:
    return math.hypot(phases.phi1, phases.phi_star * w0)


def spectrum_optimal(phases: NonlinearPhases, Omega0: float = 0.0,
                     kernel: ResponseKernel = EXPONENTIAL_KERNEL):
    """``(S0_X, S0_Y)`` at ``Omega0`` when the probe phase is optimal there.

    ``S0_X = (1 - 2 L0 D + 2 phi* L0**2) / 4`` with
    ``D = sqrt(phi1**2 + phi***2 L0**2)``; ``S0_Y`` flips the sign of the
    ``D`` term. ``S0_X`` is evaluated as ``(1 - 2 L0 phi1**2 / (D + phi* L0)) / 4``
    to avoid cancellation.
    """
    w0 = float(spectral_weight(kernel, Omega0))
    root = _root(phases, w0)
    lead = phases.phi_star * w0
    denom = root + lead
    s_x = 0.25 if denom == 0.0 else 0.25 * (1.0 - 2.0 * w0 * phases.phi1 ** 2 / denom)
    s_y = 0.25 * (1.0 + 2.0 * w0 * denom)
    return s_x, s_y


def spectrum_at(phases: NonlinearPhases, Omega, Omega0: float = 0.0,
                kernel: ResponseKernel = EXPONENTIAL_KERNEL):
    """``(S_X, S_Y)`` at ``Omega`` with the probe phase optimal at ``Omega0``.

    Written as the anchor value plus a correction that vanishes at
    ``Omega == Omega0``. The linear phase stored in ``phases`` is ignored.
    """
    w0 = float(spectral_weight(kernel, Omega0))
    root = _root(phases, w0)
    if root == 0.0:
        raise DegenerateInputError("phi1 = phi_star * L(Omega0) = 0: optimal phase undefined")
    w = spectral_weight(kernel, Omega)
    s0_x, s0_y = spectrum_optimal(phases, Omega0, kernel)
    ps = phases.phi_star
    common = ps * (w + w0)
    tilt = (phases.phi1 ** 2 + ps * ps * w0 * (w + w0)) / root
    half_dl = 0.5 * (w - w0)
    return s0_x + half_dl * (common - tilt), s0_y + half_dl * (common + tilt)


@dataclass(frozen=True)
class SpectrumRequest:
    """Everything needed to evaluate the probe spectrum on a frequency grid."""

    params: InteractionParams
    pulse1: PulseSpec
    pulse2: PulseSpec
    t: float = 0.0
    Omega_grid: tuple = (0.0,)
    Omega0: Optional[float] = None
    phase_mode: str = "optimal"
    kernel: ResponseKernel = EXPONENTIAL_KERNEL

    def __post_init__(self):
        grid = tuple(float(x) for x in np.atleast_1d(np.asarray(self.Omega_grid, dtype=float)))
        if not grid:
            raise ConfigError("Omega_grid must be non-empty")
        if not all(math.isfinite(x) for x in grid):
            raise ConfigError("Omega_grid must be finite")
        if any(b < a for a, b in zip(grid, grid[1:])):
            raise ConfigError("Omega_grid must be sorted ascending")
        object.__setattr__(self, "Omega_grid", grid)
        if self.phase_mode not in PHASE_MODES:
            raise ConfigError(f"phase_mode must be one of {PHASE_MODES}, got {self.phase_mode!r}")

    @property
    def anchor(self) -> float:
        return 0.0 if self.Omega0 is None else float(self.Omega0)


@dataclass
class SpectrumResult:
    """Sampled spectra together with the request that produced them."""

    Omega: np.ndarray
    S_X: np.ndarray
    S_Y: np.ndarray
    linear_phase: float
    phases: NonlinearPhases
    request: SpectrumRequest
    warnings: list = field(default_factory=list)

    def rows(self):
        for w, sx, sy in zip(self.Omega, self.S_X, self.S_Y):
            yield float(w), float(sx), float(sy)


def evaluate(request: SpectrumRequest) -> SpectrumResult:
    """Evaluate one request; regime problems are collected, never clamped."""
    notes = regime_warnings(request.params, request.pulse1, request.pulse2)
    phases = phases_quasistatic(request.params, request.pulse1, request.pulse2, request.t,
                                warn=False)
    grid = np.asarray(request.Omega_grid)
    if request.phase_mode == "optimal":
        try:
            phases = phases.with_linear_phase(optimal_phase(phases, request.anchor, request.kernel))
            s_x, s_y = spectrum_at(phases, grid, request.anchor, request.kernel)
        except DegenerateInputError:
            notes.append({"code": "phase_degenerate",
                          "detail": "no nonlinear phase; the explicit pulse phase is used"})
            s_x, s_y = spectrum_closed(phases, grid, request.kernel)
    else:
        s_x, s_y = spectrum_closed(phases, grid, request.kernel)
    s_x = np.broadcast_to(np.asarray(s_x, dtype=float), grid.shape).copy()
    s_y = np.broadcast_to(np.asarray(s_y, dtype=float), grid.shape).copy()
    for name, values in (("S_X", s_x), ("S_Y", s_y)):
        if np.any(values < 0):
            notes.append({"code": "spectrum_negative", "field": name,
                          "value": float(values.min())})
    return SpectrumResult(grid, s_x, s_y, phases.linear_phase, phases, request, notes)


def _with_axis(request: SpectrumRequest, axis: str, value: float) -> SpectrumRequest:
    replace = dataclasses.replace
    if axis == "Omega":
        return replace(request, Omega_grid=(value,))
    if axis == "Omega0":
        return replace(request, Omega0=value)
    if axis == "t":
        return replace(request, t=value)
    p1, p2 = request.pulse1, request.pulse2
    if axis == "intensity_ratio":
        return replace(request, pulse2=replace(p2, n_peak=value * p1.n_peak))
    # phi01: rescale both pulses, keeping the control/probe intensity ratio
    g1 = request.params.gamma1
    if g1 <= 0 or p1.n_peak <= 0:
        raise ConfigError("a phi01 sweep needs gamma1 > 0 and pulse1.n_peak > 0")
    n1 = value / (2.0 * g1)
    ratio = p2.n_peak / p1.n_peak
    return replace(request, pulse1=replace(p1, n_peak=n1), pulse2=replace(p2, n_peak=ratio * n1))


def sweep(request: SpectrumRequest, axis: str, values: Sequence[float],
          workers: int = 1) -> list:
    """Evaluate ``request`` once per value of ``axis``, in the order given.

    ``axis`` is one of ``Omega``, ``Omega0``, ``phi01``, ``intensity_ratio``
    or ``t``. Results do not depend on ``workers``.
    """
    if axis not in SWEEP_AXES:
        raise ConfigError(f"unknown sweep axis {axis!r}; expected one of {SWEEP_AXES}")
    requests = [_with_axis(request, axis, float(v)) for v in values]
    if workers <= 1 or len(requests) <= 1:
        return [evaluate(r) for r in requests]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(evaluate, requests))


def sweep_table(request: SpectrumRequest, axis: str, values: Sequence[float],
                workers: int = 1) -> list:
    """Flatten :func:`sweep` into ``(value, Omega, S_X, S_Y)`` rows, row-major over (value, Omega)."""
    results = sweep(request, axis, values, workers)
    return [(float(v), *row) for v, res in zip(values, results) for row in res.rows()]
