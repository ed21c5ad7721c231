"""Real-argument special-function kernel: Gamma, parabolic cylinder D, Hermite.

The parabolic cylinder function D_nu(x) used here is the solution of the
Weber equation

    y'' + (nu + 1/2 - x**2/4) y = 0

that decays as x -> +inf, normalised so that for non-negative integer nu = n

    D_n(x) = 2**(-n/2) * exp(-x**2/4) * H_n(x/sqrt(2)),

with H_n the physicists' Hermite polynomial.

Evaluation strategy (float64 throughout):

* base orders nu in [-1.5, 0.5):
    - |x| <= X_SWITCH: the even/odd Kummer-type power series about x = 0.
      Beyond X_SWITCH the series loses ~exp(x**2/2) to cancellation on the
      recessive (positive) side, so X_SWITCH = 4 keeps it at ~1e-10.
    - |x| >= X_ASYM = 8: Poincare asymptotic expansions, truncated at the
      smallest term (error ~1e-11 at x = 8 and falling fast).
    - the band in between: Taylor integration of the Weber equation,
      marching in the direction in which D is dominant (inward from the
      x = +8 seed, outward from the exact x = 0 values on the negative
      side), which is stable and accurate to ~1e-13.
* orders >= 0.5 at x >= 0: upward three-term recurrence in the order from
  the two base orders with the same fractional part.  D is dominant in
  the direction of increasing order for x >= 0, so this is stable.  A
  per-point log scale factor keeps orders in the hundreds representable.
* orders >= 0.5 at x < 0: the recurrence is unstable there, so use the
  connection formula D_nu(-z) = cos(pi nu) D_nu(z) + pi/Gamma(-nu) V_nu(z)
  with D_nu(z) from the stable recurrence and the companion solution
  V_nu(z) integrated outward from its closed-form origin values (V is
  dominant on the positive axis, so the outward march is stable).
* orders < -1.5: Laplace-type integral representation (all-positive
  integrand, cancellation-free for either sign of x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

NU_MAX = 200.0
X_MAX = 40.0

X_SWITCH = 4.0   # origin power series used for |x| <= X_SWITCH
X_ASYM = 8.0     # asymptotic expansions used for |x| >= X_ASYM

_SQRT_PI = math.sqrt(math.pi)
_TAYLOR_ORDER = 30

__all__ = [
    "PcfEval",
    "GammaPoleError",
    "DomainError",
    "gamma_real",
    "rgamma",
    "pcf_at_zero",
    "pcf_at_zero_log",
    "pcf_eval",
    "pcf_eval_grid",
    "pcf_eval_grid_many",
    "hermite_h",
]


class GammaPoleError(ValueError):
    """Gamma evaluated at (or within 1e-12 of) a non-positive integer."""


class DomainError(ValueError):
    """Argument outside the supported evaluation box."""


@dataclass(frozen=True)
class PcfEval:
    """One evaluation of D_nu: value and x-derivative at (order, argument)."""

    order: float
    argument: float
    value: float
    derivative: float


def gamma_real(x: float) -> float:
    """Gamma(x) for real x; raises GammaPoleError at non-positive integers."""
    if x <= 0.5 and abs(x - round(x)) <= 1e-12 and round(x) <= 0:
        raise GammaPoleError(f"Gamma pole at x={x!r}")
    return math.gamma(x)


def rgamma(x: float) -> float:
    """1/Gamma(x); exactly 0.0 at the poles of Gamma (entire function)."""
    if x <= 0.5 and abs(x - round(x)) <= 1e-12 and round(x) <= 0:
        return 0.0
    if x > 171.0:
        return math.exp(-math.lgamma(x))
    try:
        return 1.0 / math.gamma(x)
    except OverflowError:
        return 0.0


def _cospi(nu: float) -> float:
    """cos(pi*nu) with exact values at integers and half-integers."""
    r = math.fmod(nu, 2.0)
    if r < 0.0:
        r += 2.0
    if r == 0.0:
        return 1.0
    if r == 1.0:
        return -1.0
    if r == 0.5 or r == 1.5:
        return 0.0
    return math.cos(math.pi * r)


def _sinpi(nu: float) -> float:
    """sin(pi*nu) with exact values at integers and half-integers."""
    r = math.fmod(nu, 2.0)
    if r < 0.0:
        r += 2.0
    if r == 0.0 or r == 1.0:
        return 0.0
    if r == 0.5:
        return 1.0
    if r == 1.5:
        return -1.0
    return math.sin(math.pi * r)


def _gamma_sign(z: float) -> float:
    """Sign of Gamma(z) for non-pole z."""
    if z > 0.0:
        return 1.0
    return -1.0 if (math.floor(z) % 2 != 0) else 1.0


def _is_pole(z: float) -> bool:
    return z <= 0.5 and abs(z - round(z)) <= 1e-12 and round(z) <= 0


def pcf_at_zero(nu: float) -> tuple[float, float]:
    """(D_nu(0), D'_nu(0)) from the closed forms.

    D_nu(0)  = 2**(nu/2) * sqrt(pi) / Gamma((1-nu)/2)
    D'_nu(0) = -2**((nu+1)/2) * sqrt(pi) / Gamma(-nu/2)

    When the Gamma argument sits on a pole the corresponding component is
    exactly 0 (odd integer order: value; even integer order: derivative).
    """
    if not math.isfinite(nu) or abs(nu) > NU_MAX:
        raise DomainError(f"order {nu!r} outside |nu| <= {NU_MAX}")
    val = _SQRT_PI * 2.0 ** (0.5 * nu) * rgamma(0.5 * (1.0 - nu))
    der = -_SQRT_PI * 2.0 ** (0.5 * (nu + 1.0)) * rgamma(-0.5 * nu)
    return val, der


def pcf_at_zero_log(nu: float) -> tuple[float, float, float, float]:
    """Origin data as (sign_v, log|v|, sign_d, log|d|), unbounded order.

    Signs are exactly 0.0 (with log -inf) on the pole-annihilated
    components; magnitudes stay in log space so sub-ladder orders in the
    thousands do not overflow.
    """
    if not math.isfinite(nu):
        raise DomainError("order must be finite")
    zv = 0.5 * (1.0 - nu)
    zd = -0.5 * nu
    ln2 = math.log(2.0)
    lnsp = 0.5 * math.log(math.pi)
    if _is_pole(zv):
        s_v, l_v = 0.0, -math.inf
    else:
        s_v = _gamma_sign(zv)
        l_v = 0.5 * nu * ln2 + lnsp - math.lgamma(zv)
    if _is_pole(zd):
        s_d, l_d = 0.0, -math.inf
    else:
        s_d = -_gamma_sign(zd)
        l_d = 0.5 * (nu + 1.0) * ln2 + lnsp - math.lgamma(zd)
    return s_v, l_v, s_d, l_d


# ----------------------------------------------------------------------
# base-order evaluation: power series, asymptotics, ODE march
# ----------------------------------------------------------------------

def _kummer(a: float, b: float, t: np.ndarray, max_terms: int = 400) -> np.ndarray:
    """Kummer series M(a, b, t) summed termwise; t >= 0."""
    term = np.ones_like(t)
    total = np.ones_like(t)
    for k in range(max_terms):
        term = term * ((a + k) / ((b + k) * (k + 1.0))) * t
        total += term
        if np.all(np.abs(term) <= 1e-18 * (np.abs(total) + 1e-300)):
            break
    return total


def _series_base(nu: float, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """D_nu and D'_nu by the even/odd power series about x = 0."""
    t = 0.5 * x * x
    m_e = _kummer(-0.5 * nu, 0.5, t)
    m_o = _kummer(0.5 * (1.0 - nu), 1.5, t)
    # dM/dt = (a/b) M(a+1, b+1, t)
    dm_e = -nu * _kummer(1.0 - 0.5 * nu, 1.5, t)
    dm_o = ((1.0 - nu) / 3.0) * _kummer(0.5 * (3.0 - nu), 2.5, t)
    p1 = _SQRT_PI * 2.0 ** (0.5 * nu) * rgamma(0.5 * (1.0 - nu))
    p2 = -_SQRT_PI * 2.0 ** (0.5 * (nu + 1.0)) * rgamma(-0.5 * nu)
    env = np.exp(-0.25 * x * x)
    val = env * (p1 * m_e + p2 * x * m_o)
    der = env * (
        p1 * (x * dm_e - 0.5 * x * m_e)
        + p2 * (m_o + x * x * dm_o - 0.5 * x * x * m_o)
    )
    return val, der


def _asym_sums(nu: float, z: np.ndarray, v_kind: bool) -> tuple[np.ndarray, np.ndarray]:
    """Optimally truncated asymptotic sums S and z*S' for large z.

    v_kind=False: recessive solution, term ratio -(2k-nu)(2k-nu+1)/(2(k+1)z^2).
    v_kind=True:  dominant solution,  term ratio (2k+nu+1)(2k+nu+2)/(2(k+1)z^2).
    The series are divergent; each point stops at its smallest term.
    """
    inv2z2 = 0.5 / (z * z)
    u = np.ones_like(z)
    s = np.ones_like(z)
    sp = np.zeros_like(z)
    active = np.ones(z.shape, dtype=bool)
    for k in range(120):
        if v_kind:
            ratio = ((1.0 + nu + 2 * k) * (2.0 + nu + 2 * k) / (k + 1.0)) * inv2z2
        else:
            ratio = (-(-nu + 2 * k) * (-nu + 2 * k + 1) / (k + 1.0)) * inv2z2
        u_next = u * ratio
        active &= np.abs(u_next) < np.abs(u)
        if not active.any():
            break
        s[active] += u_next[active]
        sp[active] += u_next[active] * (-2.0 * (k + 1))
        u = u_next
        if np.all(np.abs(u[active]) <= 1e-18):
            break
    return s, sp


def _asym_pos(nu: float, z: np.ndarray):
    """Log-scaled D_nu(z), D'_nu(z) for z >= X_ASYM: (val_m, der_m, ls)."""
    s, sp = _asym_sums(nu, z, v_kind=False)
    ls = -0.25 * z * z + nu * np.log(z)
    der = (nu / z - 0.5 * z) * s + sp / z
    return s, der, ls


def _asym_neg(nu: float, z: np.ndarray):
    """Log-scaled D_nu(-z), D'_nu(-z) for z >= X_ASYM (connection formula)."""
    su, sup = _asym_sums(nu, z, v_kind=False)
    ls_u = -0.25 * z * z + nu * np.log(z)
    u_val = su
    u_der = (nu / z - 0.5 * z) * su + sup / z  # d/dz, same scale

    c = _cospi(nu)
    rg = math.pi * rgamma(-nu)
    if rg == 0.0:  # integer order: pure parity, recessive part only
        return c * u_val, -c * u_der, ls_u

    sv, svp = _asym_sums(nu, z, v_kind=True)
    ls_v = 0.25 * z * z - (nu + 1.0) * np.log(z) \
        + 0.5 * math.log(2.0 / math.pi) + math.log(abs(rg))
    v_val = sv
    v_der = (0.5 * z - (nu + 1.0) / z) * sv + svp / z

    sgn = math.copysign(1.0, rg)
    ls = np.maximum(ls_u, ls_v)
    fu = np.exp(ls_u - ls)
    fv = np.exp(ls_v - ls)
    val = c * u_val * fu + sgn * v_val * fv
    der = -(c * u_der * fu + sgn * v_der * fv)  # d/dx = -d/dz
    return val, der, ls


def _integral_rep(nu: float, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """D_nu and D'_nu for nu < -1 from the Laplace integral

        D_nu(x) = exp(-x^2/4)/Gamma(-nu) * Int_0^inf exp(-x t - t^2/2) t^(-nu-1) dt

    on a log-transformed grid (t = e^u) with the maximum factored out, so
    it is stable for any sign of x.
    """
    c = -nu - 1.0
    flat = np.atleast_1d(x).astype(float)
    val = np.empty_like(flat)
    der = np.empty_like(flat)
    lsc = np.empty_like(flat)
    lg = math.lgamma(-nu)
    for i, xi in enumerate(flat):
        tstar = 2.0 * (c + 1e-300) / (xi + math.sqrt(xi * xi + 4.0 * c + 4e-300))
        if tstar <= 0.0:
            tstar = 1e-8
        ustar = math.log(tstar)
        sigma = 1.0 / math.sqrt(c + tstar * tstar + 1e-300)
        half = max(40.0 * sigma, 25.0)
        u = np.linspace(ustar - half, ustar + half, 1600)
        t = np.exp(u)
        h = (c + 1.0) * u - xi * t - 0.5 * t * t  # includes the Jacobian t du
        m = np.max(h)
        w = np.exp(h - m)
        i0 = np.trapezoid(w, u)
        i1 = np.trapezoid(w * t, u)
        val[i] = i0
        der[i] = -0.5 * xi * i0 - i1
        lsc[i] = m - lg - 0.25 * xi * xi
    return (val.reshape(np.shape(x)), der.reshape(np.shape(x)),
            lsc.reshape(np.shape(x)))


def _taylor_step(nu: float, a: float, v: float, d: float, h: float,
                 deltas: np.ndarray | None):
    """One Taylor step for y'' = (x^2/4 - nu - 1/2) y from x = a.

    Returns (y(a+h), y'(a+h)) and, if deltas is given, values/derivatives
    at a + deltas (0 < delta <= h in magnitude).
    """
    e = nu + 0.5
    q0 = 0.25 * a * a - e
    q1 = 0.5 * a
    c = np.zeros(_TAYLOR_ORDER + 1)
    c[0], c[1] = v, d
    for k in range(_TAYLOR_ORDER - 1):
        acc = q0 * c[k]
        if k >= 1:
            acc += q1 * c[k - 1]
        if k >= 2:
            acc += 0.25 * c[k - 2]
        c[k + 2] = acc / ((k + 1.0) * (k + 2.0))
    dcoef = c[1:] * np.arange(1, _TAYLOR_ORDER + 1)
    v_new = c[_TAYLOR_ORDER]
    d_new = dcoef[_TAYLOR_ORDER - 1]
    for k in range(_TAYLOR_ORDER - 1, -1, -1):
        v_new = v_new * h + c[k]
        if k < _TAYLOR_ORDER - 1:
            d_new = d_new * h + dcoef[k]
    if deltas is None:
        return v_new, d_new, None, None
    vt = np.full(deltas.shape, c[_TAYLOR_ORDER])
    dt = np.full(deltas.shape, dcoef[_TAYLOR_ORDER - 1])
    for k in range(_TAYLOR_ORDER - 1, -1, -1):
        vt = vt * deltas + c[k]
        if k < _TAYLOR_ORDER - 1:
            dt = dt * deltas + dcoef[k]
    return v_new, d_new, vt, dt


def _weber_march(nu: float, x0: float, v0: float, d0: float, ls0: float,
                 targets: np.ndarray, h_mag: float):
    """Integrate the Weber equation from x0, visiting every target.

    Marches in the direction of the targets (all on one side of x0),
    carrying a log scale; returns (val, der, logsc) arrays aligned with
    `targets` (any order, duplicates allowed).
    """
    order_idx = np.argsort(targets)
    ts = targets[order_idx]
    direction = 1.0 if (ts[-1] if ts.size else x0) >= x0 else -1.0
    if direction < 0:
        ts = ts[::-1]
        order_idx = order_idx[::-1]
    val = np.empty(ts.shape)
    der = np.empty(ts.shape)
    lsc = np.empty(ts.shape)
    v, d, ls = v0, d0, ls0
    a = x0
    i = 0
    n = ts.size
    # targets coinciding with the seed
    while i < n and ts[i] == x0:
        val[i], der[i], lsc[i] = v, d, ls
        i += 1
    while i < n:
        h = direction * h_mag
        remaining = ts[i:] - a
        in_step = np.abs(remaining) <= h_mag + 1e-15
        if direction > 0:
            in_step &= remaining > 0
        else:
            in_step &= remaining < 0
        k = int(np.count_nonzero(in_step))
        deltas = remaining[:k] if k else None
        v_new, d_new, vt, dt = _taylor_step(nu, a, v, d, h, deltas)
        if k:
            val[i:i + k] = vt
            der[i:i + k] = dt
            lsc[i:i + k] = ls
            i += k
        v, d, a = v_new, d_new, a + h
        m = max(abs(v), abs(d))
        if m > 1e200 or (0.0 < m < 1e-200):
            f = math.exp(-math.log(m))
            v, d, ls = v * f, d * f, ls + math.log(m)
    out_v = np.empty_like(val)
    out_d = np.empty_like(der)
    out_l = np.empty_like(lsc)
    out_v[order_idx] = val
    out_d[order_idx] = der
    out_l[order_idx] = lsc
    return out_v, out_d, out_l


def _base_eval(nu: float, x: np.ndarray):
    """Log-scaled D_nu, D'_nu for base orders nu <= 0.5, any arguments.

    Returns (val_m, der_m, logscale); arguments past ~52 would underflow
    exp(-x^2/4) in plain floats, so every branch carries its scale.
    """
    if nu < -1.5:
        return _integral_rep(nu, x)
    val = np.empty_like(x)
    der = np.empty_like(x)
    lsc = np.zeros_like(x)
    ser = np.abs(x) <= X_SWITCH
    pos = x >= X_ASYM
    neg = x <= -X_ASYM
    mid_p = (x > X_SWITCH) & (x < X_ASYM)
    mid_n = (x < -X_SWITCH) & (x > -X_ASYM)
    if ser.any():
        val[ser], der[ser] = _series_base(nu, x[ser])
    if pos.any():
        val[pos], der[pos], lsc[pos] = _asym_pos(nu, x[pos])
    if neg.any():
        val[neg], der[neg], lsc[neg] = _asym_neg(nu, -x[neg])
    if mid_p.any():
        # march inward from the asymptotic seed; D is dominant inward
        sv, sd, sls = _asym_pos(nu, np.array([X_ASYM]))
        v, d, ls = _weber_march(nu, X_ASYM, float(sv[0]), float(sd[0]),
                                float(sls[0]), x[mid_p], 0.5)
        val[mid_p], der[mid_p], lsc[mid_p] = v, d, ls
    if mid_n.any():
        # march outward from the exact origin values; D is dominant outward
        v0, d0 = pcf_at_zero(nu)
        v, d, ls = _weber_march(nu, 0.0, v0, d0, 0.0, x[mid_n], 0.5)
        val[mid_n], der[mid_n], lsc[mid_n] = v, d, ls
    return val, der, lsc


# ----------------------------------------------------------------------
# order recurrence (x >= 0) and the negative-axis connection
# ----------------------------------------------------------------------

_RESCALE_HI = 1e200
_RESCALE_LO = 1e-200


def _rescale(arrs: list[np.ndarray], logsc: np.ndarray) -> None:
    m = np.abs(arrs[0])
    for a in arrs[1:]:
        m = np.maximum(m, np.abs(a))
    bad = (m > _RESCALE_HI) | ((m > 0.0) & (m < _RESCALE_LO))
    if np.any(bad):
        ln = np.zeros_like(logsc)
        # clamp so exp(-ln) cannot overflow for subnormal magnitudes
        ln[bad] = np.maximum(np.log(m[bad]), -700.0)
        f = np.exp(-ln)
        for a in arrs:
            a *= f
        logsc += ln


def _ladder(nu: float, x: np.ndarray, collect=None):
    """Walk D upward in the order from the base pair sharing frac(nu).

    For collect=None returns (value, derivative, log_scale) at order nu;
    otherwise collect is a set of step offsets and a dict {offset: triple}
    comes back.  Arguments must be >= 0 (the recurrence is unstable for
    negative arguments; callers route those through _connection_neg).
    """
    k_steps = int(math.floor(nu + 0.5))
    b1 = nu - k_steps
    v0, d0, l0 = _base_eval(b1 - 1.0, x)
    v1, d1, l1 = _base_eval(b1, x)
    # bring the base pair onto one per-point scale
    logsc = np.maximum(l0, l1)
    f0 = np.exp(l0 - logsc)
    f1 = np.exp(l1 - logsc)
    v0, d0 = v0 * f0, d0 * f0
    v1, d1 = v1 * f1, d1 * f1
    out = {}
    if collect is not None and 0 in collect:
        out[0] = (v1.copy(), d1.copy(), logsc.copy())
    top = k_steps if collect is None else max(collect)
    for j in range(top):
        order = b1 + j
        v2 = x * v1 - order * v0
        d2 = v1 + x * d1 - order * d0
        v0, d0, v1, d1 = v1, d1, v2, d2
        _rescale([v0, d0, v1, d1], logsc)
        if collect is not None and (j + 1) in collect:
            out[j + 1] = (v1.copy(), d1.copy(), logsc.copy())
    if collect is None:
        return v1, d1, logsc
    return out


def _v_origin(nu: float) -> tuple[float, float, float]:
    """Companion solution V_nu at the origin as (value, derivative, log scale).

    V_nu(0)  = -sin(pi nu/2) * 2**(-nu/2) / Gamma(1 + nu/2)
    V'_nu(0) =  cos(pi nu/2) * 2**((1-nu)/2) / Gamma((1+nu)/2)
    """
    s0 = -_sinpi(0.5 * nu)
    s1 = _cospi(0.5 * nu)
    l0 = -0.5 * nu * math.log(2.0) - math.lgamma(1.0 + 0.5 * nu)
    l1 = 0.5 * (1.0 - nu) * math.log(2.0) - math.lgamma(0.5 * (1.0 + nu))
    ls = max(l0 if s0 != 0.0 else -math.inf, l1 if s1 != 0.0 else -math.inf)
    v0 = s0 * math.exp(l0 - ls) if s0 != 0.0 else 0.0
    d0 = s1 * math.exp(l1 - ls) if s1 != 0.0 else 0.0
    return v0, d0, ls


def _connection_neg(nu: float, z: np.ndarray):
    """D_nu(-z), D'_nu(-z) (w.r.t. x) for nu >= 0.5, z > 0, log-scaled.

    D_nu(-z) = cos(pi nu) D_nu(z) + pi/Gamma(-nu) V_nu(z); V is integrated
    outward from the origin (dominant direction), D comes from the ladder.
    """
    c = _cospi(nu)
    rg_pi = math.pi * rgamma(-nu)
    dv, dd, dls = _ladder(nu, z)
    if rg_pi == 0.0:  # integer order: pure parity
        return c * dv, -c * dd, dls
    v0, d0, ls0 = _v_origin(nu)
    h = min(0.5, 2.0 / math.sqrt(nu + 1.0))
    vv, vd, vls = _weber_march(nu, 0.0, v0, d0, ls0, z, h)
    # combine the two log-scaled parts through log magnitudes
    with np.errstate(divide="ignore"):
        l1 = np.where(dv != 0.0, np.log(np.abs(dv)) + dls, -np.inf)
        l2 = np.where(vv != 0.0, np.log(np.abs(vv)) + vls, -np.inf)
    shift = np.maximum(l1, l2)
    shift = np.where(np.isfinite(shift), shift, 0.0)
    val = c * np.sign(dv) * np.exp(l1 - shift) + rg_pi * np.sign(vv) * np.exp(l2 - shift)
    with np.errstate(divide="ignore"):
        l1d = np.where(dd != 0.0, np.log(np.abs(dd)) + dls, -np.inf)
        l2d = np.where(vd != 0.0, np.log(np.abs(vd)) + vls, -np.inf)
    der = -(c * np.sign(dd) * np.exp(l1d - shift) + rg_pi * np.sign(vd) * np.exp(l2d - shift))
    return val, der, shift


def pcf_eval_grid(nu: float, x: np.ndarray):
    """Vectorised D_nu on an array of arguments.

    Returns (value, derivative, log_scale): the function equals
    value*exp(log_scale), split so that very large orders stay
    representable.
    """
    x = np.asarray(x, dtype=float)
    if nu < 0.5:
        return _base_eval(nu, x)
    val = np.empty_like(x)
    der = np.empty_like(x)
    lsc = np.zeros_like(x)
    pos = x >= 0.0
    if pos.any():
        v, d, ls = _ladder(nu, x[pos])
        val[pos], der[pos], lsc[pos] = v, d, ls
    if (~pos).any():
        v, d, ls = _connection_neg(nu, -x[~pos])
        val[~pos], der[~pos], lsc[~pos] = v, d, ls
    return val, der, lsc


def pcf_eval_grid_many(orders, x: np.ndarray) -> dict:
    """Evaluate several orders on one grid, sharing recurrence sweeps.

    Orders whose fractional parts agree (mod 1, to 1e-9) ride the same
    upward recurrence, so integer ladders (glued Hermite levels) cost a
    single sweep regardless of how many orders are requested.  Arguments
    must be >= 0.  Returns {order: (value, derivative, log_scale)}.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0):
        raise DomainError("pcf_eval_grid_many requires non-negative arguments")
    result = {}
    groups: dict[float, list[float]] = {}
    for nu in orders:
        if nu < 0.5:
            result[nu] = _base_eval(nu, x)
            continue
        b1 = nu - int(math.floor(nu + 0.5))
        for key in groups:
            if abs(key - b1) < 1e-9:
                groups[key].append(nu)
                break
        else:
            groups[b1] = [nu]
    for b1, nus in groups.items():
        offsets = {int(math.floor(nu + 0.5)) for nu in nus}
        got = _ladder(b1 + max(offsets), x, collect=offsets)
        for nu in nus:
            result[nu] = got[int(math.floor(nu + 0.5))]
    return result


def pcf_eval(nu: float, x: float) -> PcfEval:
    """D_nu(x) with derivative, for |nu| <= 200 and |x| <= 40."""
    if not (math.isfinite(nu) and math.isfinite(x)):
        raise DomainError("order and argument must be finite")
    if abs(nu) > NU_MAX or abs(x) > X_MAX:
        raise DomainError(
            f"(nu={nu!r}, x={x!r}) outside |nu| <= {NU_MAX}, |x| <= {X_MAX}"
        )
    if x == 0.0:
        val, der = pcf_at_zero(nu)
        return PcfEval(order=nu, argument=x, value=val, derivative=der)
    v, d, ls = pcf_eval_grid(nu, np.array([x], dtype=float))
    if ls[0] != 0.0:
        scale = math.exp(ls[0]) if ls[0] > -745.0 else 0.0
        value = float(v[0]) * scale if abs(v[0]) > 0 else 0.0
        deriv = float(d[0]) * scale if abs(d[0]) > 0 else 0.0
    else:
        value, deriv = float(v[0]), float(d[0])
    return PcfEval(order=nu, argument=x, value=value, derivative=deriv)


def hermite_h(n: int, y):
    """Physicists' Hermite polynomial H_n(y) by the three-term recurrence."""
    if n < 0 or n != int(n) or n > 200:
        raise DomainError(f"Hermite degree {n!r} outside 0 <= n <= 200")
    y = np.asarray(y, dtype=float)
    h0 = np.ones_like(y)
    if n == 0:
        return h0 if h0.shape else float(h0)
    h1 = 2.0 * y
    for k in range(1, int(n)):
        h0, h1 = h1, 2.0 * y * h1 - 2.0 * k * h0
    return h1 if h1.shape else float(h1)
