"""Quadrature means and correlation functions of the probe pulse.

The correlation functions carry the shot-noise ``delta(tau)`` term as an
explicit weight; it is never discretized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .kernel import EXPONENTIAL_KERNEL, ResponseKernel, eval_g, eval_h, h_tilde
from .nlo_phase import (
    DEFAULT_QUAD,
    InteractionParams,
    NonlinearPhases,
    QuadSpec,
    correlator_K_exact,
    correlator_K_quasistatic,
)
from .pulse import PulseSpec, amplitude

#: coefficient of delta(tau) in the correlation function of a coherent input
DELTA_WEIGHT = 0.25


@dataclass(frozen=True)
class CorrelationSample:
    """``R(t, t + tau) = delta_weight * delta(tau) + smooth_value``."""

    t: float
    tau: float
    smooth_value: float
    delta_weight: float = DELTA_WEIGHT


def mean_quadratures(phases: NonlinearPhases, pulse1: PulseSpec, t: float = 0.0):
    """Mean X and Y quadratures of the probe at ``t``."""
    a = float(amplitude(pulse1, t))
    damp = math.exp(-phases.mu1 - phases.mu2x)
    arg = phases.Phi1 + phases.phi2x
    return a * damp * math.cos(arg), a * damp * math.sin(arg)


def pair_damping_printed(phases_t1: NonlinearPhases, phases_t2: NonlinearPhases,
                         kernel: ResponseKernel, t1: float, t2: float) -> float:
    """Pair damping ``(mu1(t1) + mu1(t2) + mu2x(t1) + mu2x(t2)) * h~(t2 - t1)``.

    Expanded to second order it weights the lag by ``h`` where the truncated
    correlation functions carry ``g``; see :func:`pair_damping_normal_ordered`.
    """
    mu_pair = phases_t1.mu1 + phases_t2.mu1 + phases_t1.mu2x + phases_t2.mu2x
    return mu_pair * float(h_tilde(kernel, (t2 - t1) / kernel.tau_r))


def pair_damping_normal_ordered(params: InteractionParams, pulse1: PulseSpec, pulse2: PulseSpec,
                                t1: float, t2: float, kernel: ResponseKernel = EXPONENTIAL_KERNEL,
                                exact: bool = False, quad: QuadSpec = DEFAULT_QUAD) -> float:
    """Pair damping ``K1(t1, t2) + K2x(t1, t2)`` from the normal-ordered means.

    With ``exact=True`` the time correlators are integrated numerically,
    otherwise their quasi-static forms are used.
    """
    if exact:
        return (correlator_K_exact(kernel, pulse1, params.gamma1, t1, t2, quad)
                + correlator_K_exact(kernel, pulse2, params.gamma_x, t1, t2, quad))
    return (correlator_K_quasistatic(kernel, pulse1, params.gamma1, t1, t2)
            + correlator_K_quasistatic(kernel, pulse2, params.gamma_x, t1, t2))


def correlator_C_exact(params: InteractionParams, phases_t1: NonlinearPhases,
                       phases_t2: NonlinearPhases, pair_damping: float, pulse1: PulseSpec,
                       t1: float, t2: float, kernel: ResponseKernel = EXPONENTIAL_KERNEL):
    """Second moments ``<X(t1) X(t2)>`` and ``<Y(t1) Y(t2)>`` before truncation.

    Returns ``(cx_smooth, cy_smooth, delta_weight)``; the delta part sits at
    ``t1 == t2`` and is reported separately. ``pair_damping`` is the
    exponent written Lambda in the closed forms (see the two
    ``pair_damping_*`` helpers).
    """
    a1 = float(amplitude(pulse1, t1))
    a2 = float(amplitude(pulse1, t2))
    damp = math.exp(-(phases_t1.mu1 + phases_t2.mu1 + phases_t1.mu2x + phases_t2.mu2x))
    nudge = params.gamma1 * float(h_tilde(kernel, (t2 - t1) / kernel.tau_r))
    big1, big2 = phases_t1.Phi_tilde, phases_t2.Phi_tilde
    plus = math.exp(-pair_damping) * math.cos(big1 + big2 + nudge)
    minus = math.exp(pair_damping) * math.cos(big1 - big2)
    pref = 0.5 * a1 * a2 * damp
    return pref * (plus + minus), -pref * (plus - minus), DELTA_WEIGHT


def corr_R(phases: NonlinearPhases, kernel: ResponseKernel = EXPONENTIAL_KERNEL, tau=0.0):
    """Truncated correlation functions ``(R_X, R_Y)`` at lag ``tau``.

    Valid to second order in the per-photon phase and for pulses long
    compared with the relaxation time. ``tau`` may be an array, in which
    case ``smooth_value`` is an array too.
    """
    h = eval_h(kernel, tau)
    g = eval_g(kernel, tau)
    big = phases.Phi_tilde
    spm = phases.phi1 * h * math.sin(2.0 * big)
    pair = phases.phi_star * g
    sx = 0.25 * (-spm + pair * math.sin(big) ** 2)
    sy = 0.25 * (spm + pair * math.cos(big) ** 2)
    return (CorrelationSample(phases.t, tau, sx), CorrelationSample(phases.t, tau, sy))
