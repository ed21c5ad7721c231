"""Spectra, eigenfunctions, and coherent states of the two-frequency
(asymmetric) harmonic oscillator.

The oscillator has frequency omega_plus for x >= 0 and omega_minus for
x < 0; everything is parameterised by the ratio s = omega_plus/omega_minus
in natural units hbar = m = omega_minus = 1.
"""

from .specfun import (DomainError, GammaPoleError, PcfEval, gamma_real,
                      hermite_h, pcf_at_zero, pcf_eval, rgamma)
from .spectrum import (EigenSolution, OscillatorConfig, ScanExhaustedError,
                       ScanParams, Spectrum, SubspaceNotFoundError,
                       SubspaceRule, find_eigenvalues,
                       locate_subspace_in_spectrum, matching_residual,
                       subspace_rule, subspace_solutions)
from .wavefun import (DegenerateGluingError, GridFunction, GridSpec,
                      assemble_eigenfunction, check_continuity, count_nodes,
                      eigenfunction_matrix, orthonormality_gram)
from .fock import (BasisTag, FockVector, basis_state, coherent_coefficients,
                   displace, full_basis, ladder_lower, ladder_raise,
                   number_expectation, subspace_basis)
from .coherent import (BasisMismatchError, CoherentState,
                       InsufficientSpectrumError, InvalidRuleError,
                       PolarQuadrature, auto_grid, build_coherent,
                       coherence_fidelity, evolve, fidelity_trace,
                       gaussianity_diagnostic, identity_resolution_check,
                       identity_resolution_target, overlap,
                       position_expectation, wavefunction)

__version__ = "0.1.0"
