"""Classical descriptions of the coherent input pulses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

SHAPES = ("gaussian", "sech", "flat-top", "tabulated")

#: quasi-static approximation is trusted above this tau_p / tau_r
QUASI_STATIC_MIN_RATIO = 50.0


class EnvelopeRangeError(ValueError):
    """A tabulated envelope was queried outside its samples."""


@dataclass(frozen=True)
class PulseSpec:
    """Envelope ``r(t)``, peak photon density and linear phase of one pulse.

    ``linear_phase`` is either a constant (radians) or a tuple of polynomial
    coefficients in ascending order, ``phi(t) = c0 + c1 t + ...``.
    Tabulated envelopes take ``samples=(times, values)``; values are rescaled
    so that ``r(0) = 1``.
    """

    shape: str = "gaussian"
    tau_p: float = 100.0
    n_peak: float = 0.0
    linear_phase: Union[float, tuple] = 0.0
    samples: Optional[tuple] = field(default=None, repr=False)

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"unknown envelope shape {self.shape!r}; expected one of {SHAPES}")
        if not (np.isfinite(self.tau_p) and self.tau_p > 0):
            raise ValueError(f"tau_p must be positive, got {self.tau_p}")
        if not (np.isfinite(self.n_peak) and self.n_peak >= 0):
            raise ValueError(f"n_peak must be non-negative, got {self.n_peak}")
        if isinstance(self.linear_phase, (list, np.ndarray)):
            object.__setattr__(self, "linear_phase", tuple(float(c) for c in self.linear_phase))
        if self.shape == "tabulated":
            object.__setattr__(self, "samples", _normalize_samples(self.samples))
        elif self.samples is not None:
            raise ValueError("samples are only accepted for the tabulated shape")

    def phase(self, t):
        """Linear phase of the pulse at ``t``."""
        if isinstance(self.linear_phase, tuple):
            return np.polynomial.polynomial.polyval(t, self.linear_phase)
        return self.linear_phase + 0.0 * np.asarray(t, dtype=float)

    def breakpoints(self) -> tuple:
        """Times where the envelope is not smooth."""
        if self.shape == "flat-top":
            return (-self.tau_p, self.tau_p)
        if self.shape == "tabulated":
            return tuple(self.samples[0])
        return ()


def _normalize_samples(samples) -> tuple:
    if samples is None:
        raise ValueError("tabulated shape requires samples=(times, values)")
    times, values = (np.asarray(a, dtype=float) for a in samples)
    if times.ndim != 1 or times.shape != values.shape or times.size < 2:
        raise ValueError("samples must be two 1-D arrays of equal length >= 2")
    if np.any(np.diff(times) <= 0):
        raise ValueError("sample times must be strictly increasing")
    if not times[0] <= 0.0 <= times[-1]:
        raise ValueError("sample times must bracket t = 0")
    if np.any(values < 0):
        raise ValueError("envelope samples must be non-negative")
    r0 = np.interp(0.0, times, values)
    if r0 <= 0:
        raise ValueError("envelope must be positive at t = 0")
    values = values / r0
    if values.max() > 1.0 + 1e-12:
        raise ValueError("envelope must peak at t = 0 (r(t) <= r(0) = 1)")
    return tuple(times), tuple(values)


def envelope(pulse: PulseSpec, t):
    """Normalized amplitude envelope ``r(t)``, with ``r(0) = 1``."""
    t = np.asarray(t, dtype=float)
    if pulse.shape == "gaussian":
        x = t / pulse.tau_p
        out = np.exp(-0.5 * x * x)
    elif pulse.shape == "sech":
        out = 1.0 / np.cosh(t / pulse.tau_p)
    elif pulse.shape == "flat-top":
        out = np.where(np.abs(t) <= pulse.tau_p, 1.0, 0.0)
    else:
        times, values = pulse.samples
        if np.any(t < times[0]) or np.any(t > times[-1]):
            raise EnvelopeRangeError(
                f"t outside tabulated range [{times[0]}, {times[-1]}]"
            )
        out = np.interp(t, times, values)
    return out[()] if np.ndim(out) == 0 else out


def photon_density(pulse: PulseSpec, t):
    """Mean photon-number density ``n_peak * r(t)**2``."""
    r = envelope(pulse, t)
    return pulse.n_peak * r * r


def amplitude(pulse: PulseSpec, t):
    """Modulus of the coherent amplitude, ``sqrt(n_peak) * r(t)``."""
    return np.sqrt(pulse.n_peak) * envelope(pulse, t)


def tabulated(times: Sequence[float], values: Sequence[float], **kwargs) -> PulseSpec:
    """Build a tabulated pulse from sampled envelope values."""
    kwargs.setdefault("tau_p", float(max(abs(times[0]), abs(times[-1]))))
    return PulseSpec(shape="tabulated", samples=(tuple(times), tuple(values)), **kwargs)
