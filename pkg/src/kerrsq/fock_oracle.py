"""Brute-force check of the time-dependent Bose-operator algebra.

Each pulse is cut into a few time bins of width ``dt``; every bin is a
single bosonic mode truncated at ``n_max`` photons. The continuum operator
``A(t_k)`` maps to ``a_k / sqrt(dt)`` so that ``[A_j, A_k^+] = delta_jk / dt``.
The nonlinear phase operator of bin ``j`` is
``q_j = sum_k h~((t_j - t_k) / tau_r) N_k`` with ``N_k = a_k^+ a_k``, and a
coherent amplitude ``alpha_k`` is the amplitude of the bin mode (mean photon
number ``|alpha_k|**2`` per bin).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import expm_multiply
from scipy.special import gammaln

from .errors import TruncationError
from .kernel import EXPONENTIAL_KERNEL, ResponseKernel, h_tilde

MAX_BINS = 4
MAX_NMAX = 20
MAX_DIM = 200_000


@dataclass(frozen=True)
class ModeLattice:
    """Coherent amplitudes on a grid of time bins.

    ``alpha`` has one row per pulse (probe first, optional control second)
    and one column per bin.
    """

    alpha: tuple
    n_max: int = 12
    dt: float = 1.0

    def __post_init__(self):
        amps = np.atleast_2d(np.asarray(self.alpha, dtype=complex))
        if amps.ndim != 2 or amps.shape[0] not in (1, 2):
            raise ValueError("alpha must have one row per pulse (one or two pulses)")
        n_pulses, n_bins = amps.shape
        if not 1 <= n_bins <= MAX_BINS:
            raise ValueError(f"n_bins must be in 1..{MAX_BINS}, got {n_bins}")
        if not 1 <= self.n_max <= MAX_NMAX:
            raise ValueError(f"n_max must be in 1..{MAX_NMAX}, got {self.n_max}")
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if np.any(np.abs(amps) ** 2 > self.n_max / 4):
            raise ValueError("per-bin mean photon number must not exceed n_max / 4")
        if (self.n_max + 1) ** (n_pulses * n_bins) > MAX_DIM:
            raise ValueError(f"state dimension exceeds {MAX_DIM}")
        object.__setattr__(self, "alpha", tuple(tuple(complex(a) for a in row) for row in amps))

    @property
    def amplitudes(self) -> np.ndarray:
        return np.asarray(self.alpha, dtype=complex)

    @property
    def n_pulses(self) -> int:
        return len(self.alpha)

    @property
    def n_bins(self) -> int:
        return len(self.alpha[0])

    @property
    def n_modes(self) -> int:
        return self.n_pulses * self.n_bins

    @property
    def dim(self) -> int:
        return (self.n_max + 1) ** self.n_modes

    @property
    def times(self) -> np.ndarray:
        return self.dt * np.arange(self.n_bins)


class _Space:
    """Product Fock basis of ``n_modes`` truncated modes."""

    def __init__(self, n_modes: int, n_max: int):
        self.n_modes = n_modes
        self.n_max = n_max
        self.dim = (n_max + 1) ** n_modes
        shape = (n_max + 1,) * n_modes
        self.occ = np.array(np.unravel_index(np.arange(self.dim), shape))
        self.strides = [(n_max + 1) ** (n_modes - 1 - m) for m in range(n_modes)]

    def lowering(self, m: int) -> sparse.csr_matrix:
        cols = np.nonzero(self.occ[m] > 0)[0]
        rows = cols - self.strides[m]
        data = np.sqrt(self.occ[m, cols].astype(float))
        return sparse.csr_matrix((data, (rows, cols)), shape=(self.dim, self.dim), dtype=complex)

    def safe_columns(self) -> np.ndarray:
        """Basis states from which one more photon in any mode stays in the space."""
        return np.nonzero(np.all(self.occ < self.n_max, axis=0))[0]

    def coherent(self, alphas) -> np.ndarray:
        """Truncated product coherent state, left unnormalized so its coefficients are exact."""
        psi = np.ones(self.dim, dtype=complex)
        for m, a in enumerate(alphas):
            n = self.occ[m]
            if a == 0:
                psi *= (n == 0)
                continue
            log_mag = -0.5 * abs(a) ** 2 + n * math.log(abs(a)) - 0.5 * gammaln(n + 1)
            psi *= np.exp(log_mag + 1j * n * np.angle(a))
        return psi


def _coupling(lattice: ModeLattice, kernel: ResponseKernel) -> np.ndarray:
    t = lattice.times
    return np.asarray(h_tilde(kernel, (t[:, None] - t[None, :]) / kernel.tau_r))


@dataclass(frozen=True)
class ExpectationReport:
    matrix: complex
    closed_form: complex
    difference: float
    n_max: int


def _exp_mean_matrix(alphas, coeffs, n_max: int) -> complex:
    space = _Space(len(alphas), n_max)
    psi = space.coherent(alphas)
    gen = sparse.diags(1j * (np.asarray(coeffs) @ space.occ).astype(complex), format="csc")
    # normalize so that the truncation shows only through the missing tail
    return complex(np.vdot(psi, expm_multiply(gen, psi)) / np.vdot(psi, psi).real)


def _exp_mean_closed(alphas, coeffs) -> complex:
    n = np.abs(np.asarray(alphas)) ** 2
    return complex(np.exp(np.sum((np.exp(1j * np.asarray(coeffs)) - 1.0) * n)))


def phase_coefficients(lattice: ModeLattice, gamma: float, kernel: ResponseKernel = EXPONENTIAL_KERNEL,
                       t: float = 0.0) -> np.ndarray:
    """Per-bin phase ``gamma * h~((t - t_k) / tau_r)`` of ``exp(O(t))``."""
    return gamma * np.asarray(h_tilde(kernel, (t - lattice.times) / kernel.tau_r))


def expect_exp_O(lattice: ModeLattice, gamma: float, kernel: ResponseKernel = EXPONENTIAL_KERNEL,
                 t: float = 0.0, pulse: int = 0, atol: float = 1e-10) -> ExpectationReport:
    """``<exp(i gamma q(t))>`` in the coherent state, by matrix and closed form.

    Raises TruncationError when the two disagree by more than ``atol`` and
    the disagreement does not shrink when the cutoff is raised from
    ``n_max - 2`` to ``n_max``.
    """
    alphas = lattice.amplitudes[pulse]
    coeffs = phase_coefficients(lattice, gamma, kernel, t)
    closed = _exp_mean_closed(alphas, coeffs)
    matrix = _exp_mean_matrix(alphas, coeffs, lattice.n_max)
    diff = abs(matrix - closed)
    if diff > atol and lattice.n_max > 2:
        coarse = abs(_exp_mean_matrix(alphas, coeffs, lattice.n_max - 2) - closed)
        if diff >= coarse:
            raise TruncationError(
                f"Fock cutoff n_max={lattice.n_max} dominates: |matrix - closed| = {diff:.3e}"
            )
    return ExpectationReport(matrix, closed, diff, lattice.n_max)


@dataclass(frozen=True)
class TruncatedMeanReport:
    gamma: float
    phi: float
    mu: float
    exact: complex
    truncated: complex
    modulus_error: float
    phase_error: float
    discrepancy: float
    discrepancy_half: float
    observed_order: float
    constant: float
    constant_half: float
    passed: bool


def _truncated_pair(alphas, coeffs):
    n = np.abs(alphas) ** 2
    phi = float(np.sum(coeffs * n))
    mu = float(0.5 * np.sum(coeffs ** 2 * n))
    return phi, mu, complex(np.exp(1j * phi - mu)), _exp_mean_closed(alphas, coeffs)


def verify_truncated_mean(lattice: ModeLattice, gamma: float,
                          kernel: ResponseKernel = EXPONENTIAL_KERNEL, t: float = 0.0,
                          pulse: int = 0, order_tol: float = 0.25) -> TruncatedMeanReport:
    """Compare the exact coherent mean with its second-order truncation.

    The truncation keeps ``exp(i phi - mu)``; the remainder must be third
    order in ``gamma``, which is tested by halving ``gamma`` and requiring an
    observed order within ``order_tol`` of 3.
    """
    alphas = lattice.amplitudes[pulse]
    coeffs = phase_coefficients(lattice, gamma, kernel, t)
    phi, mu, trunc, exact = _truncated_pair(alphas, coeffs)
    _, _, trunc_h, exact_h = _truncated_pair(alphas, 0.5 * coeffs)
    disc = abs(exact - trunc)
    disc_h = abs(exact_h - trunc_h)
    if disc == 0.0:
        order, const, const_h, passed = float("nan"), 0.0, 0.0, True
    else:
        order = math.log2(disc / disc_h) if disc_h > 0 else float("inf")
        const = disc / gamma ** 3
        const_h = disc_h / (0.5 * gamma) ** 3
        passed = abs(order - 3.0) <= order_tol
    return TruncatedMeanReport(
        gamma=gamma,
        phi=phi,
        mu=mu,
        exact=exact,
        truncated=trunc,
        modulus_error=abs(abs(exact) - math.exp(-mu)),
        phase_error=float(abs(np.angle(exact * np.exp(-1j * phi)))),
        discrepancy=disc,
        discrepancy_half=disc_h,
        observed_order=order,
        constant=const,
        constant_half=const_h,
        passed=passed,
    )


@dataclass
class AlgebraReport:
    """Largest residual of each identity and the pair of modes where it occurred."""

    residuals: dict = field(default_factory=dict)
    worst_pair: dict = field(default_factory=dict)
    tolerances: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.residuals[k] <= self.tolerances[k] for k in self.residuals)

    def failures(self) -> list:
        return [(k, self.residuals[k], self.worst_pair.get(k)) for k in self.residuals
                if self.residuals[k] > self.tolerances[k]]

    def _record(self, name: str, value: float, pair) -> None:
        if value >= self.residuals.get(name, -1.0):
            self.residuals[name] = float(value)
            self.worst_pair[name] = pair


ALGEBRA_TOLERANCES = {
    "commutator": 1e-10,
    "annihilator_commutator": 1e-10,
    "number_invariance": 1e-12,
    "permutation": 1e-10,
    "evolution_consistency": 1e-12,
}


def _max_abs(m) -> float:
    m = sparse.csr_matrix(m)
    return float(np.max(np.abs(m.data))) if m.nnz else 0.0


def verify_commutator_and_statistics(lattice: ModeLattice, gamma: float,
                                     kernel: ResponseKernel = EXPONENTIAL_KERNEL,
                                     gamma_x: float = 0.0, gamma2=None,
                                     tolerances=None) -> AlgebraReport:
    """Check the evolved operators against the canonical algebra.

    Evolution follows ``A_j(z) = exp(i gamma q1_j + i gamma_x q2_j) A_j(0)``
    for the probe and the mirrored form for the control pulse. Checks:

    - ``commutator``: ``[A_m, A_n^+] = delta_mn / dt`` on states where no mode
      is at the cutoff;
    - ``annihilator_commutator``: ``[A_m, A_n] = 0``;
    - ``number_invariance``: ``A_m^+ A_m`` equals its input value;
    - ``permutation``: ``A_0k exp(O_j) = exp(O_j + i gamma h~_jk) A_0k`` and
      ``A_0k`` commutes with the other pulse's phase operators;
    - ``evolution_consistency``: the closed evolution agrees with
      ``U^+ A U`` for the diagonal propagator ``U = exp(i F(N))``.
    """
    gamma2 = gamma if gamma2 is None else gamma2
    tol = dict(ALGEBRA_TOLERANCES, **(tolerances or {}))
    nb, npulse = lattice.n_bins, lattice.n_pulses
    space = _Space(lattice.n_modes, lattice.n_max)
    h = _coupling(lattice, kernel)
    occ = space.occ.astype(float)
    counts = [occ[p * nb:(p + 1) * nb] for p in range(npulse)]
    zeros = np.zeros_like(counts[0])
    n1, n2 = counts[0], counts[1] if npulse == 2 else zeros
    q1, q2 = h @ n1, h @ n2

    # U = exp(i F) with F the normal-ordered SPM + XPM generator
    F = 0.5 * gamma * (np.einsum("jk,jd,kd->d", h, n1, n1) - np.diag(h) @ n1)
    F += 0.5 * gamma2 * (np.einsum("jk,jd,kd->d", h, n2, n2) - np.diag(h) @ n2)
    F += gamma_x * np.einsum("jk,jd,kd->d", h, n1, n2)
    U = sparse.diags(np.exp(1j * F), format="csr")

    scale = 1.0 / math.sqrt(lattice.dt)
    lowering, evolved, labels = [], [], []
    for p in range(npulse):
        own, other = (q1, q2) if p == 0 else (q2, q1)
        g_self = gamma if p == 0 else gamma2
        for k in range(nb):
            a = space.lowering(p * nb + k)
            phase = sparse.diags(np.exp(1j * (g_self * own[k] + gamma_x * other[k])), format="csr")
            lowering.append(a * scale)
            evolved.append(phase @ a * scale)
            labels.append((p, k))

    report = AlgebraReport(tolerances=tol)
    safe = space.safe_columns()
    eye = sparse.identity(space.dim, dtype=complex, format="csr")
    for m, A_m in enumerate(evolved):
        for n, A_n in enumerate(evolved):
            comm = (A_m @ A_n.conj().T - A_n.conj().T @ A_m)
            if m == n:
                comm = comm - eye / lattice.dt
            report._record("commutator", _max_abs(comm[:, safe]), (labels[m], labels[n]))
            report._record("annihilator_commutator", _max_abs(A_m @ A_n - A_n @ A_m),
                           (labels[m], labels[n]))
        n_out = A_m.conj().T @ A_m
        n_in = lowering[m].conj().T @ lowering[m]
        report._record("number_invariance", _max_abs(n_out - n_in), (labels[m], labels[m]))
        report._record("evolution_consistency",
                       _max_abs(U.conj().T @ lowering[m] @ U - A_m), (labels[m], labels[m]))

    for k in range(nb):
        A0 = lowering[k]
        for j in range(nb):
            O = 1j * gamma * q1[j]
            D = 1j * gamma * h[j, k]
            lhs = A0 @ sparse.diags(np.exp(O), format="csr")
            rhs = sparse.diags(np.exp(O + D), format="csr") @ A0
            report._record("permutation", _max_abs(lhs - rhs), ((0, k), (0, j)))
            if npulse == 2:
                Ox = sparse.diags(np.exp(1j * gamma_x * q2[j]), format="csr")
                report._record("permutation", _max_abs(A0 @ Ox - Ox @ A0), ((0, k), (1, j)))
    return report
