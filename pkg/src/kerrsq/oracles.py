"""Independent numeric cross-checks of the closed-form results.

Each runner returns a report ``{"kind", "checks": [...], "pass"}`` where every
check records ``name, observed, expected, tolerance, pass``.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate

from .fock_oracle import (
    ModeLattice,
    expect_exp_O,
    verify_commutator_and_statistics,
    verify_truncated_mean,
)
from .kernel import EXPONENTIAL_KERNEL, eval_g, eval_h, fourier_g, fourier_h
from .nlo_phase import (
    InteractionParams,
    correlator_K_exact,
    correlator_K_quasistatic,
    mu_exact,
    phase_exact,
    phases_quasistatic,
)
from .pulse import PulseSpec, envelope
from .quadrature import DELTA_WEIGHT, corr_R
from .spectra import optimal_phase, spectrum_closed

FIGURE_RATIOS = (0.0, 2.0, 3.0, 5.0, 8.0)


def check(name: str, observed: float, expected: float, tolerance: float, passed=None) -> dict:
    observed, expected = float(observed), float(expected)
    if passed is None:
        passed = abs(observed - expected) <= tolerance
    return {"name": name, "observed": observed, "expected": expected,
            "tolerance": float(tolerance), "pass": bool(passed)}


def report(kind: str, checks: list) -> dict:
    return {"kind": kind, "checks": checks, "pass": all(c["pass"] for c in checks)}


def lag_grid(half_window: float = 40.0, step: float = 0.01) -> np.ndarray:
    """Symmetric lag grid with a node at zero and an even number of intervals."""
    n = int(math.ceil(half_window / step))
    n += n % 2
    return np.linspace(-half_window, half_window, 2 * n + 1)


def fourier_transform(samples: np.ndarray, tau: np.ndarray, Omega) -> np.ndarray:
    """Numeric ``integral samples(tau) exp(i Omega tau) dtau`` by Simpson's rule.

    Returns complex values, one per frequency in ``Omega``.
    """
    Omega = np.atleast_1d(np.asarray(Omega, dtype=float))
    phase = np.exp(1j * np.outer(Omega, tau))
    return integrate.simpson(phase * samples[None, :], x=tau, axis=1)


def figure_phases(phi01: float, ratio: float, Omega0: float, gamma1: float = 1e-3, t: float = 0.0):
    """Probe phases for the figure presets, at the optimal phase for ``Omega0``."""
    params = InteractionParams.figure_preset(gamma1)
    n1 = phi01 / (2.0 * gamma1)
    phases = phases_quasistatic(params, PulseSpec(n_peak=n1), PulseSpec(n_peak=ratio * n1), t)
    return phases.with_linear_phase(optimal_phase(phases, Omega0))


def run_dft(phi01: float = 2.0, ratios=FIGURE_RATIOS, Omega0: float = 0.0,
            Omega_grid=None, half_window: float = 40.0, step: float = 0.01,
            tolerance: float = 1e-6) -> dict:
    """Fourier-transform the truncated correlation functions and compare with the spectra."""
    kernel = EXPONENTIAL_KERNEL
    Omega = np.linspace(0.0, 3.0, 301) if Omega_grid is None else np.asarray(Omega_grid, float)
    tau = lag_grid(half_window, step)
    checks = []

    h_img = fourier_transform(eval_h(kernel, tau), tau, Omega)
    g_img = fourier_transform(eval_g(kernel, tau), tau, Omega)
    rel_h = np.max(np.abs(h_img - fourier_h(kernel, Omega)) / fourier_h(kernel, Omega))
    rel_g = np.max(np.abs(g_img - fourier_g(kernel, Omega)) / fourier_g(kernel, Omega))
    checks.append(check("fourier_h_equals_2L", rel_h, 0.0, tolerance))
    checks.append(check("fourier_g_equals_4L2", rel_g, 0.0, tolerance))

    for ratio in ratios:
        phases = figure_phases(phi01, ratio, Omega0)
        r_x, r_y = corr_R(phases, kernel, tau)
        s_x, s_y = spectrum_closed(phases, Omega, kernel)
        for label, r, s in (("S_X", r_x, s_x), ("S_Y", r_y, s_y)):
            numeric = fourier_transform(r.smooth_value, tau, Omega) + DELTA_WEIGHT
            err = np.max(np.abs(numeric - s))
            checks.append(check(f"dft_{label}_ratio_{ratio:g}", err, 0.0, tolerance))
    return report("dft", checks)


def run_convolution(tau_p_values=(50.0, 100.0, 200.0, 400.0), reference_tau_p: float = 100.0,
                    t_fractions=(0.0, 0.25, 0.5, 0.75, 1.0), gamma: float = 1e-3,
                    phi0: float = 2.0, tolerance: float = 1e-2,
                    lags=(0.0, 1.0, 2.0, 3.0, 4.0, 5.0)) -> dict:
    """Compare the quasi-static phases with the exact convolutions.

    Relative errors are maxima over ``|t| <= tau_p`` at the listed fractions.
    """
    kernel = EXPONENTIAL_KERNEL
    n_peak = phi0 / (2.0 * gamma)
    phase_err, mu_err = {}, {}
    for tau_p in tau_p_values:
        pulse = PulseSpec(tau_p=tau_p, n_peak=n_peak)
        pe, me = 0.0, 0.0
        for frac in t_fractions:
            t = frac * tau_p
            r2 = float(envelope(pulse, t)) ** 2
            phi_qs = phi0 * r2
            mu_qs = 0.5 * gamma * gamma * n_peak * r2
            pe = max(pe, abs(phase_exact(kernel, pulse, gamma, t) - phi_qs) / phi_qs)
            me = max(me, abs(mu_exact(kernel, pulse, gamma, t) - mu_qs) / mu_qs)
        phase_err[tau_p], mu_err[tau_p] = pe, me

    checks = []
    if reference_tau_p in phase_err:
        checks.append(check(f"phase_rel_error_tau_p_{reference_tau_p:g}",
                            phase_err[reference_tau_p], 0.0, tolerance))
        checks.append(check(f"mu_rel_error_tau_p_{reference_tau_p:g}",
                            mu_err[reference_tau_p], 0.0, tolerance))
    ordered = [phase_err[k] for k in tau_p_values]
    for a, b, (ta, tb) in zip(ordered, ordered[1:], zip(tau_p_values, tau_p_values[1:])):
        checks.append(check(f"phase_error_decreases_{ta:g}_to_{tb:g}", b, a, 0.0, passed=b < a))

    pulse = PulseSpec(tau_p=reference_tau_p, n_peak=n_peak)
    worst = 0.0
    for lag in lags:
        exact = correlator_K_exact(kernel, pulse, gamma, 0.0, lag)
        approx = correlator_K_quasistatic(kernel, pulse, gamma, 0.0, lag)
        worst = max(worst, abs(exact - approx) / approx)
    checks.append(check(f"correlator_rel_error_tau_p_{reference_tau_p:g}", worst, 0.0, tolerance))
    return report("convolution", checks)


DEFAULT_FOCK = {
    "probe_alpha": [0.9, 0.6],
    "control_alpha": [0.8, 0.5],
    "n_max": 12,
    "dt": 1.0,
    "gamma": 0.2,
    "gamma2": 0.2,
    "gamma_x": 0.1,
}


def run_fock(probe_alpha=(0.9, 0.6), control_alpha=(0.8, 0.5), n_max: int = 12, dt: float = 1.0,
             gamma: float = 0.2, gamma2: float = 0.2, gamma_x: float = 0.1,
             closed_form_tol: float = 1e-10, order_tol: float = 0.25) -> dict:
    """Commutators, photon-number invariance and normal-ordered means on a Fock lattice."""
    kernel = EXPONENTIAL_KERNEL
    rows = [list(probe_alpha)] + ([list(control_alpha)] if control_alpha else [])
    lattice = ModeLattice(alpha=rows, n_max=n_max, dt=dt)
    checks = []

    algebra = verify_commutator_and_statistics(lattice, gamma, kernel, gamma_x=gamma_x,
                                               gamma2=gamma2)
    for name, value in algebra.residuals.items():
        checks.append(check(name, value, 0.0, algebra.tolerances[name]))

    for pulse, g in ((0, gamma), (1, gamma_x)):
        if pulse >= lattice.n_pulses:
            continue
        for j, t in enumerate(lattice.times):
            rep = expect_exp_O(lattice, g, kernel, t=t, pulse=pulse, atol=math.inf)
            checks.append(check(f"closed_form_vs_matrix_pulse{pulse + 1}_bin{j}",
                                rep.difference, 0.0, closed_form_tol))

    for g in (gamma, 0.05 * gamma):
        tm = verify_truncated_mean(lattice, g, kernel, order_tol=order_tol)
        checks.append(check(f"truncated_mean_order_gamma_{g:g}", tm.observed_order, 3.0,
                            order_tol, passed=tm.passed))
    return report("fock", checks)
