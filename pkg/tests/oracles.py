"""Independent reference implementations used as test oracles.

Everything here is deliberately built on different machinery than the
package: arbitrary-precision series summation (mpmath) for the
parabolic cylinder function, and a finite-difference Hamiltonian
diagonalisation for the eigenvalues.
"""

import math

import mpmath as mp
import numpy as np
from scipy.linalg import eigh_tridiagonal


def mp_pcf(nu, x, dps=None):
    """High-precision D_nu(x) and derivative by direct series summation.

    Uses the even/odd Kummer decomposition about x = 0 evaluated in
    arbitrary precision, with enough guard digits to absorb the
    exp(x^2/2) cancellation on the recessive side.
    """
    if dps is None:
        dps = 50 + int(abs(x) * abs(x) / 4.0) + int(abs(nu))
    with mp.workdps(dps):
        nu_ = mp.mpf(nu)
        x_ = mp.mpf(x)

        def d_of(u):
            t = u * u / 2
            me = mp.hyp1f1(-nu_ / 2, mp.mpf(1) / 2, t)
            mo = mp.hyp1f1((1 - nu_) / 2, mp.mpf(3) / 2, t)
            p1 = mp.sqrt(mp.pi) * mp.power(2, nu_ / 2) * mp.rgamma((1 - nu_) / 2)
            p2 = -mp.sqrt(mp.pi) * mp.power(2, (nu_ + 1) / 2) * mp.rgamma(-nu_ / 2)
            return mp.exp(-u * u / 4) * (p1 * me + p2 * u * mo)

        val = d_of(x_)
        der = mp.diff(d_of, x_)
        return val, der


def mp_pcf_builtin(nu, x, dps=40):
    """mpmath's own parabolic cylinder implementation (cross-check)."""
    with mp.workdps(dps):
        nu_, x_ = mp.mpf(nu), mp.mpf(x)
        return mp.pcfd(nu_, x_), mp.diff(lambda u: mp.pcfd(nu_, u), x_)


def scale_aware_error(value, derivative, ref_v, ref_d, x):
    """Relative error measured against the joint (value, slope) scale.

    Near zeros of D the plain relative error of one component blows up
    even for perfect evaluations; this uses the larger of the two
    naturally comparable magnitudes as the denominator.
    """
    scale = float(abs(ref_v) + abs(ref_d) * (abs(x) + 1.0))
    ev = float(abs(mp.mpf(value) - ref_v)) / (scale + 1e-300)
    ed = float(abs(mp.mpf(derivative) - ref_d)) / (scale + 1e-300)
    rv = float(abs(mp.mpf(value) - ref_v) / abs(ref_v)) if ref_v != 0 else ev
    rd = float(abs(mp.mpf(derivative) - ref_d) / abs(ref_d)) if ref_d != 0 else ed
    return min(max(rv, rd), max(ev, ed))


def fd_levels(s, count, half_width=14.0, n_points=24001):
    """Eigenvalues by finite-difference diagonalisation, as nu+ values.

    Completely independent of the matching-equation route: builds the
    tridiagonal Hamiltonian on a grid and solves the band eigenproblem.
    """
    x = np.linspace(-half_width, half_width, n_points)
    dx = x[1] - x[0]
    omega = np.where(x >= 0, s, 1.0)
    v = 0.5 * omega ** 2 * x ** 2
    diag = 1.0 / dx ** 2 + v
    off = np.full(n_points - 1, -0.5 / dx ** 2)
    e = eigh_tridiagonal(diag, off, select="i",
                         select_range=(0, count - 1))[0]
    return e / s - 0.5


def hermite_poly_explicit(n, y):
    """H_n(y) from explicitly accumulated polynomial coefficients."""
    coeffs = [1.0]
    for k in range(n):
        # H_{k+1} = 2 y H_k - 2 k H_{k-1}, tracked on coefficient lists
        new = [0.0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i + 1] += 2.0 * c
        if k >= 1:
            for i, c in enumerate(prev):
                new[i] -= 2.0 * k * c
        prev = coeffs
        coeffs = new
    return sum(c * y ** i for i, c in enumerate(coeffs))
