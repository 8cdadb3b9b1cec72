import cmath
import math

import numpy as np
import pytest

from kerrsq.errors import TruncationError
from kerrsq.fock_oracle import (
    ModeLattice,
    expect_exp_O,
    phase_coefficients,
    verify_commutator_and_statistics,
    verify_truncated_mean,
)
from kerrsq.kernel import EXPONENTIAL_KERNEL

K = EXPONENTIAL_KERNEL
TWO_PULSE = ModeLattice(alpha=[[0.9, 0.6], [0.8, 0.5]], n_max=12)


def brute_force_sum(phase, mean, terms=80):
    return sum(cmath.exp(1j * phase * n) * math.exp(-mean) * mean ** n / math.factorial(n)
               for n in range(terms))


def test_single_bin_example():
    lattice = ModeLattice(alpha=[[1.0]], n_max=20)
    rep = expect_exp_O(lattice, 0.1, K)
    closed = cmath.exp(cmath.exp(0.1j) - 1)
    assert rep.closed_form == pytest.approx(closed, abs=1e-15)
    assert abs(rep.closed_form) == pytest.approx(math.exp(math.cos(0.1) - 1), abs=1e-15)
    assert abs(rep.closed_form - brute_force_sum(0.1, 1.0)) <= 1e-14
    assert rep.difference <= 1e-10


@pytest.mark.parametrize("gamma,alpha", [(0.0, 1.0), (0.3, 0.0)])
def test_trivial_means_are_one(gamma, alpha):
    rep = expect_exp_O(ModeLattice(alpha=[[alpha, alpha]], n_max=8), gamma, K)
    assert rep.matrix == pytest.approx(1.0, abs=1e-15)
    assert rep.closed_form == 1.0


def test_matrix_side_converges_with_cutoff():
    diffs = [expect_exp_O(ModeLattice(alpha=[[1.2]], n_max=n), 0.2, K, atol=math.inf).difference
             for n in (6, 8, 10, 12, 14)]
    assert all(b < a for a, b in zip(diffs, diffs[1:]))


def test_closed_form_is_cutoff_independent():
    values = {expect_exp_O(ModeLattice(alpha=[[1.0, 0.5]], n_max=n), 0.2, K, atol=math.inf)
              .closed_form for n in (6, 10, 14)}
    assert len(values) == 1


def test_truncation_error_when_raising_the_cutoff_does_not_help():
    # at this tolerance the gap is rounding noise, which more levels cannot remove
    with pytest.raises(TruncationError):
        expect_exp_O(ModeLattice(alpha=[[0.05]], n_max=18), 0.1, K, atol=1e-17)
    rep = expect_exp_O(ModeLattice(alpha=[[1.0]], n_max=4), 0.5, K, atol=1.0)
    assert rep.difference > 1e-3


def test_phase_coefficients_follow_kernel():
    lattice = ModeLattice(alpha=[[0.1, 0.1, 0.1]], dt=0.5)
    coeffs = phase_coefficients(lattice, 0.2, K, t=lattice.times[1])
    assert coeffs[1] == pytest.approx(0.2)
    assert coeffs[0] == pytest.approx(0.2 * math.exp(-0.5))


def test_truncated_mean_third_order():
    lattice = ModeLattice(alpha=[[1.0]], n_max=12)
    rep = verify_truncated_mean(lattice, 1e-2, K)
    assert rep.passed
    assert abs(rep.observed_order - 3.0) < 0.01
    assert rep.constant_half == pytest.approx(rep.constant, rel=0.02)
    assert rep.phi == pytest.approx(1e-2)
    assert rep.mu == pytest.approx(0.5e-4)


def test_truncated_mean_zero_coupling():
    rep = verify_truncated_mean(ModeLattice(alpha=[[1.0]]), 0.0, K)
    assert rep.discrepancy == 0.0 and rep.passed


def test_algebra_on_two_pulse_lattice():
    rep = verify_commutator_and_statistics(TWO_PULSE, 0.2, K, gamma_x=0.1, gamma2=0.2)
    assert rep.passed, rep.failures()
    assert rep.residuals["commutator"] <= 1e-10
    assert rep.residuals["number_invariance"] <= 1e-12


def test_algebra_without_coupling_is_exact():
    rep = verify_commutator_and_statistics(TWO_PULSE, 0.0, K)
    assert max(rep.residuals.values()) <= 1e-14


def test_algebra_failure_reports_offending_pair():
    rep = verify_commutator_and_statistics(TWO_PULSE, 0.2, K, gamma_x=0.1,
                                           tolerances={"commutator": 0.0})
    assert not rep.passed
    name, value, pair = rep.failures()[0]
    assert name == "commutator" and value > 0 and pair is not None


@pytest.mark.parametrize("kwargs", [
    {"alpha": [[2.0]], "n_max": 12},
    {"alpha": [[0.1] * 5]},
    {"alpha": [[0.1]], "n_max": 21},
    {"alpha": [[0.1]] * 3},
    {"alpha": [[0.1] * 4, [0.1] * 4], "n_max": 12},
])
def test_lattice_invariants(kwargs):
    with pytest.raises(ValueError):
        ModeLattice(**kwargs)


def test_lattice_shape():
    assert TWO_PULSE.n_pulses == 2 and TWO_PULSE.n_bins == 2 and TWO_PULSE.dim == 13 ** 4
    assert np.allclose(TWO_PULSE.times, [0.0, 1.0])
