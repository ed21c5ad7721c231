# Spectrum of the asymmetric oscillator
# =====================================
#
# A particle feels frequency omega_plus for x >= 0 and omega_minus = 1 for
# x < 0.  Matching the two half-line solutions smoothly at the origin
# turns the energy quantisation into a root-finding problem for the
# order nu+ of the parabolic cylinder function; E = omega_plus (nu+ + 1/2).
#
# This script walks the solver over a few frequency ratios and shows the
# special structure at rational ratios p/q with p and q odd: every q-th
# level of one ladder lines up with a level of the other, the orders
# become integers, and the eigenfunctions degenerate to glued Hermite
# functions.

import math

import numpy as np

from asymho import (OscillatorConfig, find_eigenvalues,
                    locate_subspace_in_spectrum, matching_residual,
                    subspace_rule)

# --- the symmetric limit reproduces the textbook ladder -----------------

spec = find_eigenvalues(OscillatorConfig(s=1.0), 6)
print("s = 1 orders:", np.round(spec.nu, 10))

# --- a generic ratio: anharmonic, no integer orders ----------------------

s = math.sqrt(5.0)
spec = find_eigenvalues(OscillatorConfig(s=s), 8)
print(f"\ns = sqrt(5) orders: {np.round(spec.nu, 6)}")
print("level spacings in units of omega_plus:",
      np.round(np.diff(spec.nu), 6))
print("-> spacings drift: the spectrum is NOT equidistant")

# the matching residual whose zeros are the eigenvalues
nu_grid = np.linspace(-0.45, 1.2, 9)
print("\nmatching residual samples:",
      np.round([matching_residual(float(n), spec.config) for n in nu_grid], 4))

# --- rational ratio 5/1: an equidistant sub-ladder ------------------------

cfg5 = OscillatorConfig(s=5.0)
spec5 = find_eigenvalues(cfg5, 9)
rule = subspace_rule(5, 1)
positions = locate_subspace_in_spectrum(rule, spec5)
print(f"\ns = 5 orders: {np.round(spec5.nu, 6)}")
print(f"integer orders nu+ = 0, 1, 2 sit at full-spectrum positions "
      f"{positions}")
print(f"sub-ladder spacing: q*omega_plus = {rule.quantum} (exactly "
      f"equidistant)")

# --- the mod-4 selection rule -------------------------------------------
# p and q must agree mod 4, otherwise the predicted integer pair has
# mismatched parity and the derivative cannot be continuous.

for p, q in [(5, 1), (7, 3), (9, 1), (3, 1), (7, 5)]:
    r = subspace_rule(p, q)
    print(f"(p, q) = ({p}, {q}): sub-ladder "
          f"{'EXISTS' if r.valid else 'does not exist'}")

spec3 = find_eigenvalues(OscillatorConfig(s=3.0), 8)
closest = min(abs(nu - round(nu)) for nu in spec3.nu)
print(f"\ns = 3 (invalid pair): closest order to an integer is "
      f"{closest:.4f} away -- no glued levels, as the rule predicts")
