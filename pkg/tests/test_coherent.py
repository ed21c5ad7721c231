import math
import warnings

import numpy as np
import pytest
from scipy.special import gammainc

from asymho import (BasisMismatchError, GridSpec, InsufficientSpectrumError,
                    InvalidRuleError, OscillatorConfig, assemble_eigenfunction,
                    build_coherent, coherence_fidelity, coherent_coefficients,
                    evolve, fidelity_trace, find_eigenvalues,
                    gaussianity_diagnostic, identity_resolution_check,
                    identity_resolution_target, overlap, position_expectation,
                    subspace_rule, wavefunction)


def test_build_subspace_alpha_zero_is_ground():
    st = build_coherent(0.0, 16, rule=subspace_rule(5, 1))
    assert st.fock.coeffs[0] == 1.0
    assert np.all(st.fock.coeffs[1:] == 0.0)
    # energies: (k q + q/2) * omega_plus = 5k + 2.5, spacing = quantum
    assert st.energies[0] == pytest.approx(2.5, rel=1e-15)
    assert np.allclose(np.diff(st.energies), 5.0)


def test_build_subspace_cross_checks_spectrum():
    rule = subspace_rule(5, 1)
    spec = find_eigenvalues(OscillatorConfig(s=5.0), 9)
    st = build_coherent(1.0, 3, rule=rule, spectrum=spec)
    assert st.basis.kind == "subspace"


def test_build_full_energies_not_equidistant(spectrum_sqrt5_64):
    st = build_coherent(2.0, 64, spectrum=spectrum_sqrt5_64)
    gaps = np.diff(st.energies)
    assert np.max(gaps) - np.min(gaps) > 1e-2  # genuinely anharmonic
    s = math.sqrt(5.0)
    assert st.energies[0] == pytest.approx((spectrum_sqrt5_64.nu[0] + 0.5) * s,
                                           rel=1e-12)


def test_build_errors():
    with pytest.raises(InvalidRuleError):
        build_coherent(1.0, 8, rule=subspace_rule(3, 1))
    spec = find_eigenvalues(OscillatorConfig(s=2.0), 4)
    with pytest.raises(InsufficientSpectrumError):
        build_coherent(1.0, 8, spectrum=spec)
    with pytest.raises(ValueError):
        build_coherent(1.0, 8)


def test_overlap_closed_form():
    rule = subspace_rule(5, 1)
    a = build_coherent(1.0, 64, rule=rule)
    b = build_coherent(-1.0, 64, rule=rule)
    assert overlap(a, a) == pytest.approx(1.0, abs=1e-12)
    assert overlap(a, b) == pytest.approx(math.exp(-2.0), abs=1e-8)
    c = build_coherent(2.0, 64, rule=rule)
    d = build_coherent(2.0j, 64, rule=rule)
    assert abs(overlap(c, d)) == pytest.approx(math.exp(-4.0), abs=1e-8)


def test_overlap_basis_mismatch():
    a = build_coherent(1.0, 64, rule=subspace_rule(5, 1))
    b = build_coherent(1.0, 64, rule=subspace_rule(9, 1))
    with pytest.raises(BasisMismatchError):
        overlap(a, b)


def test_evolve_t0_identity():
    st = build_coherent(1.5, 32, rule=subspace_rule(5, 1))
    out = evolve(st, 0.0)
    assert np.array_equal(out.coeffs, st.fock.coeffs)


def test_evolve_subspace_full_period():
    # (5,1): q*omega_plus = 5; after t = 2 pi / omega_plus = 2 pi / 5 the
    # parameter returns and the global phase is e^{-i pi} = -1
    st = build_coherent(2.0, 64, rule=subspace_rule(5, 1))
    t = 2.0 * math.pi / 5.0
    out = evolve(st, t).coeffs
    assert np.max(np.abs(out + st.fock.coeffs)) <= 1e-10


def test_evolve_full_basis_loses_coherence(spectrum_sqrt5_64):
    st = build_coherent(2.0, 64, spectrum=spectrum_sqrt5_64)
    assert coherence_fidelity(st, 10.0) < 1.0 - 1e-6


def test_fidelity_t0_is_one(spectrum_sqrt5_64):
    st_full = build_coherent(2.0, 64, spectrum=spectrum_sqrt5_64)
    st_sub = build_coherent(2.0, 64, rule=subspace_rule(5, 1))
    assert coherence_fidelity(st_full, 0.0) == pytest.approx(1.0, abs=1e-12)
    assert coherence_fidelity(st_sub, 0.0) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("p,q", [(5, 1), (7, 3), (9, 1)])
def test_subspace_coherence_preserved(p, q):
    rule = subspace_rule(p, q)
    st = build_coherent(2.0, 64, rule=rule)
    q_omega = q * rule.s
    times = np.linspace(0.0, 10.0 * 2.0 * math.pi / q_omega, 64)
    fid = fidelity_trace(st, times)
    assert np.max(np.abs(fid - 1.0)) <= 1e-8


def test_subspace_global_phase_law():
    st = build_coherent(2.0, 64, rule=subspace_rule(5, 1))
    for t in (0.13, 1.7, 9.42):
        evolved = evolve(st, t).coeffs
        pred = (np.exp(-1j * 5.0 * t / 2.0)
                * coherent_coefficients(2.0 * np.exp(-1j * 5.0 * t), 64).coeffs)
        assert np.max(np.abs(evolved - pred)) <= 1e-10


def test_invalid_pair_rejected_for_subspace():
    with pytest.raises(ValueError):
        subspace_rule(7, 7)


def test_full_basis_decoherence_measured(spectrum_sqrt5_64):
    st = build_coherent(2.0, 64, spectrum=spectrum_sqrt5_64)
    times = np.linspace(0.0, 20.0, 41)
    fid = fidelity_trace(st, times)
    assert fid.min() < 0.999  # measured floor is ~0.9979 at t = 20
    assert fid.min() > 0.99   # decoherence is slow on this window
    assert np.argmin(fid) == len(times) - 1  # still decaying at the end


def test_identity_resolution_single_state():
    m = identity_resolution_check(None, 1, 6.0)
    assert m.shape == (1, 1)
    assert m[0, 0] == pytest.approx(1.0 - math.exp(-36.0), abs=1e-10)


def test_identity_resolution_diag_and_offdiag():
    m = identity_resolution_check(None, 8, 8.0)
    target = identity_resolution_target(8, 8.0)
    assert np.max(np.abs(np.diag(m) - target)) <= 1e-6
    off = m - np.diag(np.diag(m))
    assert np.max(np.abs(off)) <= 1e-12


def test_identity_resolution_target_values():
    t = identity_resolution_target(8, 8.0)
    assert np.allclose(t, gammainc(np.arange(1, 9), 64.0))
    assert np.max(np.abs(t - 1.0)) <= 1e-6  # R^2 = 64 covers n <= 7


def test_identity_resolution_needs_enough_angles():
    from asymho import PolarQuadrature
    with pytest.raises(ValueError):
        identity_resolution_check(None, 8, 8.0,
                                  PolarQuadrature(n_radial=64, n_angular=9))


def test_gaussianity_symmetric_is_gaussian(spectrum_s1_64):
    st = build_coherent(1.0, 64, spectrum=spectrum_s1_64)
    assert gaussianity_diagnostic(st, spectrum_s1_64) <= 1e-6


def test_gaussianity_asymmetric(spectrum_sqrt5_64):
    st = build_coherent(2.0, 64, spectrum=spectrum_sqrt5_64)
    assert gaussianity_diagnostic(st, spectrum_sqrt5_64) > 1e-3


def test_gaussianity_baseline_is_ground_state(spectrum_sqrt5_64):
    st = build_coherent(0.0, 64, spectrum=spectrum_sqrt5_64)
    got = gaussianity_diagnostic(st, spectrum_sqrt5_64)
    assert got > 1e-3
    # alpha = 0 reduces to the ground eigenfunction itself
    fn = wavefunction(st, spectrum_sqrt5_64)
    g0 = assemble_eigenfunction(spectrum_sqrt5_64.levels[0],
                                spectrum_sqrt5_64.config, fn.dx_policy)
    assert np.max(np.abs(fn.values - g0.values)) <= 1e-10


def test_wavefunction_norms(spectrum_sqrt5_64):
    st = build_coherent(2.0, 64, spectrum=spectrum_sqrt5_64)
    fn = wavefunction(st, spectrum_sqrt5_64)
    assert fn.quadrature_norm() == pytest.approx(1.0, abs=1e-5)
    sub = build_coherent(0.5, 64, rule=subspace_rule(5, 1))
    fs = wavefunction(sub)
    assert fs.quadrature_norm() == pytest.approx(1.0, abs=1e-5)


def test_wavefunction_mass_leans_to_soft_side():
    # omega_minus < omega_plus: the x < 0 branch is wider
    sub = build_coherent(0.5, 64, rule=subspace_rule(5, 1))
    fn = wavefunction(sub)
    prob = np.abs(fn.values) ** 2
    left = np.trapezoid(prob[fn.xs < 0], fn.xs[fn.xs < 0])
    right = np.trapezoid(prob[fn.xs >= 0], fn.xs[fn.xs >= 0])
    assert left > right


def test_wavefunction_truncation_warning():
    st = build_coherent(6.0, 64, rule=subspace_rule(5, 1))
    assert st.fock.tail_mass > 1e-6
    with pytest.warns(UserWarning):
        wavefunction(st)


def test_position_expectation_symmetric_sinusoid(spectrum_s1_64):
    st = build_coherent(1.0, 64, spectrum=spectrum_s1_64)
    ts = np.linspace(0.0, 2.0 * math.pi, 32)
    xm = position_expectation(st, ts, spectrum_s1_64)
    assert np.max(np.abs(xm - math.sqrt(2.0) * np.cos(ts))) <= 1e-8


def _dominant_peaks(series, threshold=0.05):
    spec = np.abs(np.fft.rfft(series - np.mean(series)))
    peak = np.max(spec)
    idx = [i for i in range(1, len(spec) - 1)
           if spec[i] > spec[i - 1] and spec[i] >= spec[i + 1]
           and spec[i] >= threshold * peak]
    return len(idx)


def test_position_expectation_multifrequency(spectrum_sqrt5_64,
                                             spectrum_s1_64):
    # several slow periods, enough samples to resolve neighbouring lines
    ts = np.linspace(0.0, 16.0 * 2.0 * math.pi, 1024)
    st5 = build_coherent(2.0, 64, spectrum=spectrum_sqrt5_64)
    assert _dominant_peaks(position_expectation(st5, ts, spectrum_sqrt5_64)) >= 2
    st1 = build_coherent(2.0, 64, spectrum=spectrum_s1_64)
    assert _dominant_peaks(position_expectation(st1, ts, spectrum_s1_64)) == 1
