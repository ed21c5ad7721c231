"""Eigenvalue spectrum of the two-frequency oscillator.

A particle feels frequency omega_plus for x >= 0 and omega_minus for
x < 0 (natural units hbar = m = omega_minus = 1, omega_plus = s >= 1).
Self-adjointness forces the two half-line solutions D_{nu+}(xi+) and
D_{nu-}(-xi-) to join smoothly at the origin, which pins nu+ to the
roots of a transcendental matching function built from origin data
only.  Energies are E = hbar*omega_plus*(nu+ + 1/2) and the companion
order is nu- = s*nu+ + (s-1)/2.

For rational s = p/q with odd coprime p, q and p == q (mod 4), a
sub-ladder of exactly equidistant levels exists at integer orders
n+(k) = k*q + (q-1)/2; those roots are where both origin factors of the
matching function vanish (glued Hermite eigenfunctions).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .specfun import pcf_at_zero, pcf_at_zero_log

__all__ = [
    "OscillatorConfig",
    "EigenSolution",
    "ScanParams",
    "Spectrum",
    "SubspaceRule",
    "ScanExhaustedError",
    "SubspaceNotFoundError",
    "matching_residual",
    "find_eigenvalues",
    "subspace_rule",
    "subspace_solutions",
    "locate_subspace_in_spectrum",
]


class ScanExhaustedError(RuntimeError):
    """Fewer roots than requested inside the scan window."""


class SubspaceNotFoundError(RuntimeError):
    """A predicted integer root is missing from the computed spectrum."""


@dataclass(frozen=True)
class OscillatorConfig:
    """Physical parameters; the frequency ratio s is the only knob.

    Natural units: hbar = mass = omega_minus = 1, omega_plus = s.
    """

    s: float
    omega_minus: float = 1.0
    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self):
        if not (self.s >= 1.0):
            raise ValueError(f"frequency ratio s must be >= 1, got {self.s!r}")

    @property
    def omega_plus(self) -> float:
        return self.s * self.omega_minus

    def nu_minus(self, nu_plus: float) -> float:
        return self.s * nu_plus + 0.5 * (self.s - 1.0)


@dataclass
class EigenSolution:
    """One matched level: order pair, energy, and origin gluing data.

    energy is in units of hbar*omega_plus (i.e. nu_plus + 1/2).
    glue_plus multiplies the x >= 0 branch D_{nu+}, glue_minus the x < 0
    branch D_{nu-}; `gluing` records whether value or derivative
    continuity fixed them (the latter only when both origin values
    vanish, the odd glued-Hermite case).  norm is the quadrature norm of
    the glued function on the default grid; it is filled in lazily by
    the first wavefunction assembly.
    """

    index: int
    nu_plus: float
    nu_minus: float
    energy: float
    glue_plus: float
    glue_minus: float
    gluing: str = "value"
    norm: float | None = None
    log_norm: float | None = None
    # sign/log-magnitude copies of the gluing coefficients; sub-ladder
    # levels with orders in the hundreds overflow the plain floats above
    glue_sign_plus: float = 0.0
    glue_log_plus: float = -math.inf
    glue_sign_minus: float = 0.0
    glue_log_minus: float = -math.inf


@dataclass(frozen=True)
class ScanParams:
    step: float = 0.02
    nu_min: float = -0.499
    nu_max: float = float("nan")
    tolerance: float = 1e-10


@dataclass
class Spectrum:
    """Ascending matched levels for one configuration."""

    config: OscillatorConfig
    levels: list[EigenSolution]
    scan: ScanParams

    def __len__(self) -> int:
        return len(self.levels)

    @property
    def nu(self) -> np.ndarray:
        return np.array([sol.nu_plus for sol in self.levels])

    @property
    def energies(self) -> np.ndarray:
        """Energies in natural units (hbar*omega_plus*(nu+1/2))."""
        w = self.config.omega_plus * self.config.hbar
        return np.array([w * sol.energy for sol in self.levels])

    def to_json(self) -> str:
        doc = {
            "s": self.config.s,
            "s_hex": self.config.s.hex(),
            "scan": {
                "step": self.scan.step,
                "nu_min": self.scan.nu_min,
                "nu_max": self.scan.nu_max,
                "tolerance": self.scan.tolerance,
            },
            "levels": [
                {
                    "n": sol.index,
                    "nu_plus": sol.nu_plus,
                    "nu_minus": sol.nu_minus,
                    "energy": sol.energy,
                }
                for sol in self.levels
            ],
        }
        return json.dumps(doc, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "Spectrum":
        doc = json.loads(text)
        s = float.fromhex(doc["s_hex"]) if "s_hex" in doc else float(doc["s"])
        config = OscillatorConfig(s=s)
        scan = ScanParams(
            step=doc["scan"]["step"],
            nu_min=doc["scan"]["nu_min"],
            nu_max=doc["scan"]["nu_max"],
            tolerance=doc["scan"]["tolerance"],
        )
        levels = [
            _make_solution(config, rec["n"], rec["nu_plus"])
            for rec in doc["levels"]
        ]
        return cls(config=config, levels=levels, scan=scan)


def matching_residual(nu_plus: float, config: OscillatorConfig) -> float:
    """Transcendental matching function f(nu+).

    f = sqrt(omega_minus) * D'_{nu-}(0) * D_{nu+}(0)
      + sqrt(omega_plus)  * D'_{nu+}(0) * D_{nu-}(0)

    obtained by eliminating the branch amplitudes from value and
    derivative continuity at the origin; f(nu+) = 0 iff nu+ is an
    eigenvalue.  At glued-Hermite points both terms vanish through zero
    factors; those zeros are genuine eigenvalues.
    """
    nu_minus = config.nu_minus(nu_plus)
    vp, dp = pcf_at_zero(nu_plus)
    vm, dm = pcf_at_zero(nu_minus)
    return (
        math.sqrt(config.omega_minus) * dm * vp
        + math.sqrt(config.omega_plus) * dp * vm
    )


def _scaled_residual(nu_plus: float, config: OscillatorConfig) -> float:
    """Matching function rescaled by its largest term, any order.

    Equals f(nu+) * exp(-m(nu+)) with m continuous and positive
    rescaling, so it shares the roots and sign changes of f but stays
    O(1) where the literal formula would overflow (large nu-).
    """
    nu_minus = config.nu_minus(nu_plus)
    svp, lvp, sdp, ldp = pcf_at_zero_log(nu_plus)
    svm, lvm, sdm, ldm = pcf_at_zero_log(nu_minus)
    l1 = 0.5 * math.log(config.omega_minus) + ldm + lvp
    l2 = 0.5 * math.log(config.omega_plus) + ldp + lvm
    s1 = sdm * svp
    s2 = sdp * svm
    m = max(l1 if s1 != 0.0 else -math.inf, l2 if s2 != 0.0 else -math.inf)
    if m == -math.inf:
        return 0.0
    t1 = s1 * math.exp(l1 - m) if s1 != 0.0 else 0.0
    t2 = s2 * math.exp(l2 - m) if s2 != 0.0 else 0.0
    return t1 + t2


def _glued_factors(nu_plus: float, config: OscillatorConfig, eps: float = 1e-8) -> bool:
    """True when f vanishes by zero factors (glued-Hermite predicate)."""
    leps = math.log(eps)
    svp, lvp, sdp, ldp = pcf_at_zero_log(nu_plus)
    svm, lvm, sdm, ldm = pcf_at_zero_log(config.nu_minus(nu_plus))
    values_small = (svp == 0.0 or lvp < leps) and (svm == 0.0 or lvm < leps)
    derivs_small = (sdp == 0.0 or ldp < leps) and (sdm == 0.0 or ldm < leps)
    return values_small or derivs_small


def _make_solution(config: OscillatorConfig, index: int, nu_plus: float) -> EigenSolution:
    nu_minus = config.nu_minus(nu_plus)
    svp, lvp, sdp, ldp = pcf_at_zero_log(nu_plus)
    svm, lvm, sdm, ldm = pcf_at_zero_log(nu_minus)
    leps = math.log(1e-8)
    if (svp == 0.0 or lvp < leps) and (svm == 0.0 or lvm < leps):
        gluing = "derivative"
        sp_, lp_ = -sdm, 0.5 * math.log(config.omega_minus) + ldm
        sm_, lm_ = sdp, 0.5 * math.log(config.omega_plus) + ldp
    else:
        gluing = "value"
        sp_, lp_ = svm, lvm
        sm_, lm_ = svp, lvp

    def _fold(sign: float, logmag: float) -> float:
        if sign == 0.0:
            return 0.0
        if logmag > 709.0:
            return sign * math.inf
        if logmag < -745.0:
            return sign * 0.0
        return sign * math.exp(logmag)

    return EigenSolution(
        index=index,
        nu_plus=nu_plus,
        nu_minus=nu_minus,
        energy=nu_plus + 0.5,
        glue_plus=_fold(sp_, lp_),
        glue_minus=_fold(sm_, lm_),
        gluing=gluing,
        glue_sign_plus=sp_,
        glue_log_plus=lp_ if sp_ != 0.0 else -math.inf,
        glue_sign_minus=sm_,
        glue_log_minus=lm_ if sm_ != 0.0 else -math.inf,
    )


def find_eigenvalues(config: OscillatorConfig, count: int,
                     step: float = 0.02, tolerance: float = 1e-10,
                     nu_max: float | None = None) -> Spectrum:
    """Lowest `count` roots of the matching function, in ascending order.

    Sign changes on the scan grid are refined by bracketed root finding;
    tangential zeros (possible at glued-Hermite points) are caught by a
    secondary pass over local minima of |f| combined with the
    glued-factor predicate.  E > 0 forces nu+ > -1/2, hence the scan
    floor of -0.499.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    nu_lo = -0.499
    if nu_max is None:
        nu_max = count * (1.0 + config.s) / 2.0 + 2.0
    # keep the grid fine enough to separate roots (spacing > 1/(1+s))
    step = min(step, 0.5 / (1.0 + config.s))
    # refine well past the requested tolerance so the residual itself is
    # driven down (|f| ~ |f'| * xtol and f' steepens with the level);
    # scan on the rescaled residual, which is O(1) at any order
    xtol = max(1e-14, 1e-3 * tolerance)
    f = lambda t: _scaled_residual(t, config)

    grid = [nu_lo]
    vals = [f(nu_lo)]
    roots: list[float] = []
    i = 0
    while len(roots) < count and grid[i] < nu_max:
        a, fa = grid[i], vals[i]
        b = a + step
        fb = f(b)
        grid.append(b)
        vals.append(fb)
        if fa == 0.0:
            roots.append(a)
        elif fa * fb < 0.0:
            roots.append(brentq(f, a, b, xtol=xtol, rtol=8.9e-16))
        i += 1
    # secondary pass: tangential zeros show as non-sign-changing minima
    av = np.abs(np.array(vals))
    for j in range(1, len(vals) - 1):
        if av[j] <= av[j - 1] and av[j] <= av[j + 1]:
            if vals[j - 1] * vals[j] < 0.0 or vals[j] * vals[j + 1] < 0.0:
                continue  # caught by the bracketing pass
            res = minimize_scalar(lambda t: abs(f(t)),
                                  bounds=(grid[j - 1], grid[j + 1]),
                                  method="bounded",
                                  options={"xatol": xtol})
            cand = float(res.x)
            if abs(f(cand)) < 1e-6 and _glued_factors(cand, config):
                if all(abs(cand - r) > step / 2.0 for r in roots):
                    roots.append(cand)
    roots = sorted(roots)
    # dedupe anything closer than half a scan step
    unique: list[float] = []
    for r in roots:
        if not unique or r - unique[-1] > step / 2.0:
            unique.append(r)
    if len(unique) < count:
        raise ScanExhaustedError(
            f"found {len(unique)} roots <= {nu_max} for s={config.s}, needed {count}"
        )
    levels = [_make_solution(config, n, r) for n, r in enumerate(unique[:count])]
    scan = ScanParams(step=step, nu_min=nu_lo, nu_max=nu_max, tolerance=tolerance)
    return Spectrum(config=config, levels=levels, scan=scan)


@dataclass(frozen=True)
class SubspaceRule:
    """Equidistant sub-ladder bookkeeping for rational s = p/q.

    valid iff p == q (mod 4) (both 4k+1 or both 4k+3), which makes
    n+(k) and n-(k) share parity for every k so the derivative of the
    glued eigenfunction can be continuous.  quantum is the level spacing
    q*omega_plus (= p in natural units).
    """

    p: int
    q: int
    valid: bool
    quantum: float

    @property
    def s(self) -> float:
        return self.p / self.q

    def n_plus(self, k) -> int | np.ndarray:
        return k * self.q + (self.q - 1) // 2

    def n_minus(self, k) -> int | np.ndarray:
        return k * self.p + (self.p - 1) // 2


def subspace_rule(p: int, q: int) -> SubspaceRule:
    """Build the (p, q) sub-ladder rule; rejects even or non-coprime pairs."""
    if p != int(p) or q != int(q) or p < 1 or q < 1:
        raise ValueError("p and q must be positive integers")
    p, q = int(p), int(q)
    if p % 2 == 0 or q % 2 == 0:
        raise ValueError(f"(p, q) = ({p}, {q}): both must be odd")
    if math.gcd(p, q) != 1:
        raise ValueError(f"(p, q) = ({p}, {q}): must be coprime")
    if p < q:
        raise ValueError(f"(p, q) = ({p}, {q}): need p >= q")
    valid = (p % 4) == (q % 4)
    omega_plus = p / q
    return SubspaceRule(p=p, q=q, valid=valid, quantum=q * omega_plus)


def subspace_solutions(rule: SubspaceRule, config: OscillatorConfig,
                       count: int) -> list[EigenSolution]:
    """Analytic EigenSolutions for the sub-ladder levels k = 0..count-1.

    At n+(k) the orders are exact integers, so no root search is needed;
    the resonance identity (2 n-(k)+1) q = (2 n+(k)+1) p holds exactly.
    The stored index is the sub-ladder index k, not the full-spectrum
    position (use locate_subspace_in_spectrum for that).
    """
    if not rule.valid:
        raise ValueError(f"(p, q) = ({rule.p}, {rule.q}) admits no subspace")
    sols = []
    for k in range(count):
        sols.append(_make_solution(config, k, float(rule.n_plus(k))))
    return sols


def locate_subspace_in_spectrum(rule: SubspaceRule, spectrum: Spectrum,
                                tol: float = 1e-6) -> list[int]:
    """Full-spectrum positions of the sub-ladder levels found in `spectrum`.

    Every k whose predicted integer order n+(k) lies inside the computed
    range must be present within `tol`; a miss indicates a solver bug
    (the glued roots are genuine eigenvalues), so it raises rather than
    being skipped.
    """
    if not rule.valid:
        raise ValueError(f"(p, q) = ({rule.p}, {rule.q}) admits no subspace")
    nus = spectrum.nu
    if abs(spectrum.config.s - rule.s) > 1e-12:
        raise ValueError(
            f"spectrum computed at s={spectrum.config.s}, rule has s={rule.s}"
        )
    positions: list[int] = []
    k = 0
    while True:
        target = rule.n_plus(k)
        if nus.size == 0 or target > nus[-1] + tol:
            break
        hits = np.where(np.abs(nus - target) <= tol)[0]
        if hits.size == 0:
            raise SubspaceNotFoundError(
                f"predicted integer root nu+={target} (k={k}) absent from the "
                f"computed spectrum for s={rule.p}/{rule.q}"
            )
        positions.append(int(hits[0]))
        k += 1
    if positions != sorted(positions):
        raise SubspaceNotFoundError("subspace positions not increasing")
    return positions
