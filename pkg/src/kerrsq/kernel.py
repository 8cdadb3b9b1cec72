"""Response functions of an inertial electronic Kerr nonlinearity.

All times are measured in units of the relaxation time unless a kernel is
built with a different ``tau_r``. Frequencies are reduced, ``Omega = omega * tau_r``.

Fourier convention: ``S(omega) = integral R(tau) exp(i omega tau) dtau``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EXPONENTIAL = "exponential"
DELTA = "delta"
KERNEL_KINDS = (EXPONENTIAL, DELTA)


@dataclass(frozen=True)
class ResponseKernel:
    """Causal response ``H(t)`` of the nonlinearity.

    ``kind="exponential"`` is the electronic Kerr response
    ``H(t) = exp(-t/tau_r)/tau_r``. ``kind="delta"`` is the noninertial limit
    ``tau_r -> 0``; it has no pointwise values and only exposes its
    frequency-domain images.
    """

    tau_r: float = 1.0
    kind: str = EXPONENTIAL

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise ValueError(f"unsupported kernel kind {self.kind!r}; expected one of {KERNEL_KINDS}")
        if not (np.isfinite(self.tau_r) and self.tau_r > 0):
            raise ValueError(f"tau_r must be positive and finite, got {self.tau_r}")

    @property
    def is_delta(self) -> bool:
        return self.kind == DELTA


EXPONENTIAL_KERNEL = ResponseKernel()
DELTA_KERNEL = ResponseKernel(kind=DELTA)


def _require_pointwise(kernel: ResponseKernel) -> None:
    if kernel.is_delta:
        raise ValueError("the delta kernel has no pointwise values; use its Fourier images")


def eval_H(kernel: ResponseKernel, t):
    """Causal response ``H(t)``; exactly zero for ``t < 0``."""
    _require_pointwise(kernel)
    t = np.asarray(t, dtype=float)
    out = np.where(t >= 0, np.exp(-np.abs(t) / kernel.tau_r) / kernel.tau_r, 0.0)
    return out[()] if out.ndim == 0 else out


def eval_h(kernel: ResponseKernel, t):
    """Even symmetrization ``h(t) = H(|t|)``."""
    return eval_H(kernel, np.abs(np.asarray(t, dtype=float)))


def h_tilde(kernel: ResponseKernel, theta):
    """Dimensionless kernel ``tau_r * h(theta * tau_r)`` on reduced time ``theta``."""
    _require_pointwise(kernel)
    theta = np.asarray(theta, dtype=float)
    out = np.exp(-np.abs(theta))
    return out[()] if out.ndim == 0 else out


def eval_g(kernel: ResponseKernel, tau):
    """Pair-correlation kernel ``g(tau) = (1 + |tau|/tau_r) h(tau)``.

    ``g`` is the autoconvolution of ``h`` and appears in the squared-phase
    terms of the quadrature correlation functions.
    """
    _require_pointwise(kernel)
    x = np.abs(np.asarray(tau, dtype=float)) / kernel.tau_r
    out = (1.0 + x) * np.exp(-x) / kernel.tau_r
    return out[()] if out.ndim == 0 else out


def lorentzian(Omega):
    """``L(Omega) = 1 / (1 + Omega**2)`` on the reduced frequency."""
    Omega = np.asarray(Omega, dtype=float)
    out = 1.0 / (1.0 + Omega * Omega)
    return out[()] if out.ndim == 0 else out


def spectral_weight(kernel: ResponseKernel, Omega):
    """Normalized Fourier image of ``h``: ``L(Omega)``, or 1 for the delta kernel."""
    if kernel.is_delta:
        out = np.ones_like(np.asarray(Omega, dtype=float))
        return out[()] if out.ndim == 0 else out
    return lorentzian(Omega)


def fourier_h(kernel: ResponseKernel, Omega):
    """Closed-form image of ``h``: ``2 L(Omega)``."""
    return 2.0 * spectral_weight(kernel, Omega)


def fourier_g(kernel: ResponseKernel, Omega):
    """Closed-form image of ``g``: ``4 L(Omega)**2``."""
    w = spectral_weight(kernel, Omega)
    return 4.0 * w * w
