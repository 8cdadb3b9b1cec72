"""Nonlinear phase additions, damping exponents and time correlators.

Two routes are provided for each quantity: the exact convolution with the
response kernel, evaluated by adaptive quadrature, and the quasi-static
closed form valid for pulses much longer than the relaxation time.
"""

from __future__ import annotations

import dataclasses
import math
import warnings
from dataclasses import dataclass
from typing import Optional

from scipy import integrate

from .errors import NumericFailure, RegimeWarning
from .kernel import EXPONENTIAL_KERNEL, ResponseKernel, eval_g, h_tilde
from .pulse import QUASI_STATIC_MIN_RATIO, PulseSpec, envelope, photon_density

#: soft upper bound on per-photon phase coefficients
GAMMA_SOFT_LIMIT = 0.1


@dataclass(frozen=True)
class InteractionParams:
    """Per-photon nonlinear phase coefficients (propagation length folded in).

    gamma1, gamma2: self-phase modulation of pulse 1 and pulse 2.
    gamma_x: cross-phase modulation coupling.
    """

    gamma1: float = 0.0
    gamma2: float = 0.0
    gamma_x: float = 0.0

    def __post_init__(self):
        for name in ("gamma1", "gamma2", "gamma_x"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"{name} must be non-negative and finite, got {value}")
            if value > GAMMA_SOFT_LIMIT:
                warnings.warn(
                    f"{name}={value} exceeds {GAMMA_SOFT_LIMIT}; the gamma**2 truncation may fail",
                    RegimeWarning,
                    stacklevel=3,
                )

    @classmethod
    def figure_preset(cls, gamma1: float = 1e-3) -> "InteractionParams":
        """Equal self-phase coefficients with ``gamma1 = gamma2 = 2 gamma_x``."""
        return cls(gamma1=gamma1, gamma2=gamma1, gamma_x=gamma1 / 2)


@dataclass(frozen=True)
class NonlinearPhases:
    """Phase additions and damping exponents of the probe pulse at time ``t``.

    phi1: self-phase addition of the probe.
    phi2x: cross-phase addition imprinted on the probe by the control pulse.
    phi1x: cross-phase addition the probe imprints on the control pulse.
    mu1, mu2x: quantum damping exponents of the probe mean field.
    linear_phase: linear (input) phase of the probe.
    """

    phi1: float
    phi2x: float = 0.0
    phi1x: float = 0.0
    mu1: float = 0.0
    mu2x: float = 0.0
    linear_phase: float = 0.0
    t: float = 0.0

    @property
    def phi_star(self) -> float:
        return self.phi1 * self.phi1 + self.phi1x * self.phi2x

    @property
    def Phi1(self) -> float:
        return self.phi1 + self.linear_phase

    @property
    def Phi_tilde(self) -> float:
        return self.phi1 + self.linear_phase + self.phi2x

    def with_linear_phase(self, value: float) -> "NonlinearPhases":
        return dataclasses.replace(self, linear_phase=float(value))


@dataclass(frozen=True)
class QuadSpec:
    """Controls for the adaptive quadrature.

    ``window`` is the half-width of the reduced-time integration window; by
    default it is chosen so that the neglected kernel tails stay below a
    tenth of ``epsabs``.
    """

    epsabs: float = 1e-10
    epsrel: float = 0.0
    limit: int = 500
    window: Optional[float] = None

    def half_width(self) -> float:
        if self.window is not None:
            return float(self.window)
        return max(8.0, math.log(20.0 / self.epsabs))


DEFAULT_QUAD = QuadSpec()


def _quad(f, a: float, b: float, points, quad: QuadSpec) -> float:
    inner = sorted({float(p) for p in points if a < p < b})
    result = integrate.quad(
        f,
        a,
        b,
        points=inner or None,
        epsabs=quad.epsabs,
        epsrel=quad.epsrel,
        limit=quad.limit,
        full_output=1,
    )
    value, err = result[0], result[1]
    if len(result) > 3 or err > max(quad.epsabs, quad.epsrel * abs(value)):
        raise NumericFailure(
            f"quadrature did not converge on [{a}, {b}]: error estimate {err:.3e}", estimate=err
        )
    return value


def _envelope_points(pulse: PulseSpec, t: float, tau_r: float):
    # breakpoints b of r(s) mapped to theta where s = t - theta * tau_r
    return [(t - b) / tau_r for b in pulse.breakpoints()]


def _shift_integral(kernel, pulse, t, power, quad):
    """``integral h~(theta)**power * r**2(t - theta tau_r) dtheta``."""
    tau_r = kernel.tau_r
    h_tilde(kernel, 0.0)  # rejects the delta kernel

    def f(theta):
        r = envelope(pulse, t - theta * tau_r)
        return math.exp(-power * abs(theta)) * r * r

    w = quad.half_width() / power
    return _quad(f, -w, w, [0.0, *_envelope_points(pulse, t, tau_r)], quad)


def phase_exact(kernel: ResponseKernel, pulse: PulseSpec, gamma_eff: float, t: float,
                quad: QuadSpec = DEFAULT_QUAD) -> float:
    """Phase addition ``phi0/2 * integral h~(theta) r**2(t - theta tau_r) dtheta``.

    ``phi0 = 2 gamma_eff n_peak``. Raises NumericFailure when the quadrature
    misses ``quad.epsabs``.
    """
    phi0 = 2.0 * gamma_eff * pulse.n_peak
    if phi0 == 0.0:
        return 0.0
    return 0.5 * phi0 * _shift_integral(kernel, pulse, t, 1, quad)


def mu_exact(kernel: ResponseKernel, pulse: PulseSpec, gamma_eff: float, t: float,
             quad: QuadSpec = DEFAULT_QUAD) -> float:
    """Damping exponent ``mu0/2 * integral h~(theta)**2 r**2(t - theta tau_r) dtheta``."""
    mu0 = gamma_eff * gamma_eff * pulse.n_peak
    if mu0 == 0.0:
        return 0.0
    return 0.5 * mu0 * _shift_integral(kernel, pulse, t, 2, quad)


def correlator_K_exact(kernel: ResponseKernel, pulse: PulseSpec, gamma_eff: float,
                       t1: float, t2: float, quad: QuadSpec = DEFAULT_QUAD) -> float:
    """Time correlator ``mu0 * integral h~(t1 - theta) h~(t2 - theta) r**2(theta) dtheta``.

    Arguments of ``h~`` are in units of ``tau_r``.
    """
    mu0 = gamma_eff * gamma_eff * pulse.n_peak
    if mu0 == 0.0:
        return 0.0
    h_tilde(kernel, 0.0)
    tau_r = kernel.tau_r
    x1, x2 = t1 / tau_r, t2 / tau_r

    def f(theta):
        r = envelope(pulse, theta * tau_r)
        return math.exp(-abs(x1 - theta) - abs(x2 - theta)) * r * r

    w = quad.half_width()
    points = [x1, x2, *(b / tau_r for b in pulse.breakpoints())]
    return mu0 * _quad(f, min(x1, x2) - w, max(x1, x2) + w, points, quad)


def correlator_K_quasistatic(kernel: ResponseKernel, pulse: PulseSpec, gamma_eff: float,
                             t1: float, t2: float) -> float:
    """Quasi-static correlator ``mu0 * r**2(t1 + tau/2) * g(tau) * tau_r``."""
    mu0 = gamma_eff * gamma_eff * pulse.n_peak
    tau = t2 - t1
    r = envelope(pulse, t1 + 0.5 * tau)
    return float(mu0 * r * r * eval_g(kernel, tau) * kernel.tau_r)


def phases_quasistatic(params: InteractionParams, pulse1: PulseSpec, pulse2: PulseSpec,
                       t: float = 0.0, warn: bool = True) -> NonlinearPhases:
    """Phase additions with the envelopes frozen at ``t``.

    Emits a RegimeWarning for pulses shorter than ``QUASI_STATIC_MIN_RATIO``
    relaxation times unless ``warn`` is false.
    """
    if warn and min(pulse1.tau_p, pulse2.tau_p) < QUASI_STATIC_MIN_RATIO:
        warnings.warn(
            f"tau_p/tau_r below {QUASI_STATIC_MIN_RATIO:g}; quasi-static phases are approximate",
            RegimeWarning,
            stacklevel=2,
        )
    n1 = float(photon_density(pulse1, t))
    n2 = float(photon_density(pulse2, t))
    return NonlinearPhases(
        phi1=2.0 * params.gamma1 * n1,
        phi2x=2.0 * params.gamma_x * n2,
        phi1x=2.0 * params.gamma_x * n1,
        mu1=0.5 * params.gamma1 ** 2 * n1,
        mu2x=0.5 * params.gamma_x ** 2 * n2,
        linear_phase=float(pulse1.phase(t)),
        t=float(t),
    )


def phases_exact(params: InteractionParams, pulse1: PulseSpec, pulse2: PulseSpec, t: float = 0.0,
                 kernel: ResponseKernel = EXPONENTIAL_KERNEL,
                 quad: QuadSpec = DEFAULT_QUAD) -> NonlinearPhases:
    """Same fields as :func:`phases_quasistatic`, from the full convolutions."""
    return NonlinearPhases(
        phi1=phase_exact(kernel, pulse1, params.gamma1, t, quad),
        phi2x=phase_exact(kernel, pulse2, params.gamma_x, t, quad),
        phi1x=phase_exact(kernel, pulse1, params.gamma_x, t, quad),
        mu1=mu_exact(kernel, pulse1, params.gamma1, t, quad),
        mu2x=mu_exact(kernel, pulse2, params.gamma_x, t, quad),
        linear_phase=float(pulse1.phase(t)),
        t=float(t),
    )


def regime_warnings(params: InteractionParams, pulse1: PulseSpec, pulse2: PulseSpec) -> list:
    """Structured list of validity-regime violations for a parameter set."""
    out = []
    for name in ("gamma1", "gamma2", "gamma_x"):
        value = getattr(params, name)
        if value > GAMMA_SOFT_LIMIT:
            out.append({"code": "gamma_large", "field": name, "value": value,
                        "limit": GAMMA_SOFT_LIMIT})
    for label, pulse in (("pulse1", pulse1), ("pulse2", pulse2)):
        if pulse.tau_p < QUASI_STATIC_MIN_RATIO:
            out.append({"code": "pulse_short", "field": f"{label}.tau_p", "value": pulse.tau_p,
                        "limit": QUASI_STATIC_MIN_RATIO})
    return out

