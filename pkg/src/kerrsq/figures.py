"""Preset figure families: probe spectra for several control-pulse intensities."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .nlo_phase import InteractionParams
from .pulse import PulseSpec
from .spectra import SpectrumRequest, sweep

RATIOS = (0.0, 2.0, 3.0, 5.0, 8.0)
CURVE_LABELS = ("a", "b", "c", "d", "e")
FIGURE_GAMMA = 1e-3
FIGURE_PHI01 = 2.0


@dataclass(frozen=True)
class FigurePreset:
    """One figure: ``x_axis`` is ``Omega`` or ``phi01``."""

    number: int
    x_axis: str
    x_values: tuple
    Omega: float
    Omega0: float

    def as_dict(self) -> dict:
        return {
            "figure": self.number,
            "x_axis": self.x_axis,
            "x_min": self.x_values[0],
            "x_max": self.x_values[-1],
            "x_count": len(self.x_values),
            "Omega": self.Omega,
            "Omega0": self.Omega0,
            "phi01": FIGURE_PHI01 if self.x_axis == "Omega" else None,
            "ratios": list(RATIOS),
            "gamma1": FIGURE_GAMMA,
            "gamma2": FIGURE_GAMMA,
            "gamma_x": FIGURE_GAMMA / 2,
            "t": 0.0,
        }


def _omega_grid():
    return tuple(float(x) for x in np.linspace(0.0, 3.0, 301))


def _phi_grid():
    return tuple(float(x) for x in np.linspace(0.01, 3.0, 300))


def preset(number: int) -> FigurePreset:
    if number in (1, 2, 3):
        anchor = (0.0, 0.5, 0.7)[number - 1]
        return FigurePreset(number, "Omega", _omega_grid(), Omega=float("nan"), Omega0=anchor)
    if number in (4, 5, 6):
        return FigurePreset(number, "phi01", _phi_grid(), Omega=(0.0, 0.3, 0.5)[number - 4],
                            Omega0=0.0)
    if number == 7:
        return FigurePreset(number, "phi01", _phi_grid(), Omega=0.5, Omega0=0.5)
    raise ConfigError(f"figure number must be in 1..7, got {number}")


def _base_request(phi01: float, ratio: float, grid, Omega0: float) -> SpectrumRequest:
    n1 = phi01 / (2.0 * FIGURE_GAMMA)
    return SpectrumRequest(
        params=InteractionParams.figure_preset(FIGURE_GAMMA),
        pulse1=PulseSpec(n_peak=n1),
        pulse2=PulseSpec(n_peak=ratio * n1),
        Omega_grid=grid,
        Omega0=Omega0,
    )


def figure_rows(number: int, workers: int = 1) -> list:
    """``(curve_label, x, S_X)`` rows for figure ``number``, curves in ratio order."""
    spec = preset(number)
    rows = []
    for label, ratio in zip(CURVE_LABELS, RATIOS):
        if spec.x_axis == "Omega":
            request = _base_request(FIGURE_PHI01, ratio, spec.x_values, spec.Omega0)
            result = sweep(request, "intensity_ratio", [ratio])[0]
            rows.extend((label, w, sx) for w, sx, _ in result.rows())
        else:
            request = _base_request(FIGURE_PHI01, ratio, (spec.Omega,), spec.Omega0)
            results = sweep(request, "phi01", spec.x_values, workers=workers)
            rows.extend((label, x, float(res.S_X[0])) for x, res in zip(spec.x_values, results))
    return rows


def curves(number: int, workers: int = 1) -> dict:
    """Figure rows grouped as ``{label: (x array, S_X array)}``."""
    out = {}
    for label, x, s in figure_rows(number, workers):
        xs, ss = out.setdefault(label, ([], []))
        xs.append(x)
        ss.append(s)
    return {k: (np.array(xs), np.array(ss)) for k, (xs, ss) in out.items()}
