"""Truncated Fock-space coefficient algebra.

Ladder operators act as weighted shifts on coefficient vectors over the
energy eigenbasis; the same algebra serves the full basis and the
equidistant sub-ladder basis (only the attached energies differ).
Truncation losses are tracked explicitly (`leakage`, `tail_mass`) so
downstream error bars stay honest.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np
from scipy.linalg import expm

__all__ = [
    "BasisTag",
    "FockVector",
    "full_basis",
    "subspace_basis",
    "ladder_lower",
    "ladder_raise",
    "number_expectation",
    "displace",
    "coherent_coefficients",
]


@dataclass(frozen=True)
class BasisTag:
    """Identifies which eigenbasis a coefficient vector lives in."""

    kind: str  # "full" or "subspace"
    s: float | None = None
    p: int | None = None
    q: int | None = None

    def __str__(self) -> str:
        if self.kind == "full":
            return f"full(s={self.s})"
        return f"subspace({self.p}/{self.q})"


def full_basis(s: float) -> BasisTag:
    return BasisTag(kind="full", s=s)


def subspace_basis(p: int, q: int) -> BasisTag:
    return BasisTag(kind="subspace", s=p / q, p=p, q=q)


@dataclass
class FockVector:
    """Truncated coefficient vector; immutable by convention.

    leakage accumulates the squared magnitude lost past the truncation
    edge by raising operators.
    """

    coeffs: np.ndarray
    basis: BasisTag | None = None
    leakage: float = 0.0

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)

    @property
    def truncation(self) -> int:
        return self.coeffs.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    @property
    def tail_mass(self) -> float:
        """1 - sum |c_n|^2; the weight beyond the truncation for a
        unit-norm (untruncated) state."""
        return max(0.0, 1.0 - float(np.sum(np.abs(self.coeffs) ** 2)))

    def normalized(self) -> "FockVector":
        n = self.norm()
        if n == 0.0:
            raise ValueError("cannot normalise the zero vector")
        return FockVector(self.coeffs / n, self.basis, self.leakage)


def basis_state(n: int, n_trunc: int, basis: BasisTag | None = None) -> FockVector:
    c = np.zeros(n_trunc, dtype=complex)
    c[n] = 1.0
    return FockVector(c, basis)


def ladder_lower(v: FockVector) -> FockVector:
    """Annihilation as a weighted shift: out_n = sqrt(n+1) c_{n+1}."""
    n = v.truncation
    out = np.zeros(n, dtype=complex)
    k = np.arange(1, n)
    out[:-1] = np.sqrt(k) * v.coeffs[1:]
    return FockVector(out, v.basis, v.leakage)


def ladder_raise(v: FockVector) -> FockVector:
    """Creation as a weighted shift: out_n = sqrt(n) c_{n-1}.

    The coefficient pushed past the truncation edge is dropped and its
    squared magnitude added to `leakage`.
    """
    n = v.truncation
    out = np.zeros(n, dtype=complex)
    k = np.arange(1, n)
    out[1:] = np.sqrt(k) * v.coeffs[:-1]
    lost = float(n) * abs(v.coeffs[-1]) ** 2
    return FockVector(out, v.basis, v.leakage + lost)


def number_expectation(v: FockVector) -> float:
    n = np.arange(v.truncation)
    return float(np.real(np.sum(n * np.abs(v.coeffs) ** 2)))


def displace(alpha: complex, n_trunc: int,
             basis: BasisTag | None = None) -> FockVector:
    """Displacement orbit of the ground basis vector.

    Applies exp(alpha a+ - conj(alpha) a) to e0 via scipy's
    scaling-and-squaring matrix exponential; the generator is
    anti-Hermitian so the result keeps unit norm to machine precision.
    Warns when |alpha|^2 > n_trunc/4 (truncation no longer negligible).
    """
    if n_trunc < 1:
        raise ValueError("n_trunc must be >= 1")
    if abs(alpha) ** 2 > n_trunc / 4.0:
        warnings.warn(
            f"|alpha|^2 = {abs(alpha)**2:.3g} exceeds n_trunc/4 = {n_trunc/4};"
            " truncation error is no longer negligible",
            stacklevel=2,
        )
    a = np.diag(np.sqrt(np.arange(1, n_trunc, dtype=float)), 1)
    gen = alpha * a.T - np.conj(alpha) * a
    col = expm(gen)[:, 0]
    return FockVector(col, basis)


def coherent_coefficients(alpha: complex, n_trunc: int,
                          basis: BasisTag | None = None) -> FockVector:
    """Poisson-weighted coefficients c_n = e^(-|alpha|^2/2) alpha^n / sqrt(n!).

    Built by the stable ratio recurrence; the dropped tail mass
    (vector's `tail_mass`) equals the regularised incomplete-gamma
    weight of the Poisson distribution beyond the truncation.
    """
    if n_trunc < 1:
        raise ValueError("n_trunc must be >= 1")
    c = np.empty(n_trunc, dtype=complex)
    c[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(1, n_trunc):
        c[n] = c[n - 1] * alpha / math.sqrt(n)
    return FockVector(c, basis)
