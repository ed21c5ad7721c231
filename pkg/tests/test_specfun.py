import math

import numpy as np
import pytest

from asymho import specfun as sf
from asymho import DomainError, GammaPoleError, gamma_real, hermite_h, \
    pcf_at_zero, pcf_eval

import oracles


def test_gamma_one():
    assert gamma_real(1.0) == 1.0


def test_gamma_half_is_sqrt_pi():
    assert gamma_real(0.5) == pytest.approx(1.7724538509055160, rel=1e-15)


def test_gamma_reflection_minus_three_halves():
    # Gamma(-3/2) = 4 sqrt(pi) / 3
    assert gamma_real(-1.5) == pytest.approx(2.3632718012073548, rel=1e-14)


@pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -7.0, -3.0 + 1e-13])
def test_gamma_pole_raises(x):
    with pytest.raises(GammaPoleError):
        gamma_real(x)


def test_gamma_accuracy_sweep():
    import mpmath as mp
    rng = np.random.default_rng(7)
    with mp.workdps(40):
        for _ in range(50):
            x = float(rng.uniform(-50, 50))
            if x <= 0 and abs(x - round(x)) < 1e-3:
                continue
            if x > 50:
                continue
            ref = mp.gamma(x)
            assert float(abs((mp.mpf(gamma_real(x)) - ref) / ref)) <= 1e-12


def test_rgamma_zero_at_poles():
    assert sf.rgamma(0.0) == 0.0
    assert sf.rgamma(-3.0) == 0.0
    assert sf.rgamma(2.0) == pytest.approx(1.0, rel=1e-15)


def test_pcf_at_zero_order_zero():
    v, d = pcf_at_zero(0.0)
    assert v == pytest.approx(1.0, rel=1e-14)
    assert d == 0.0  # pole-annihilated exactly


def test_pcf_at_zero_order_one():
    v, d = pcf_at_zero(1.0)
    assert v == 0.0  # pole-annihilated exactly
    assert d == pytest.approx(1.0, rel=1e-14)


def test_pcf_at_zero_order_half():
    # frozen from the high-precision series oracle
    v, d = pcf_at_zero(0.5)
    assert v == pytest.approx(0.5813683170191185, rel=1e-12)
    assert d == pytest.approx(0.6081401071287601, rel=1e-12)


def test_origin_closed_forms_match_series_oracle():
    import mpmath as mp
    rng = np.random.default_rng(42)
    checked = 0
    while checked < 200:
        nu = float(rng.uniform(-5.0, 20.0))
        if abs(nu - round(nu)) < 0.01:
            continue  # pole neighbourhood of one component
        ov, od = oracles.mp_pcf(nu, 0.0)
        v, d = pcf_at_zero(nu)
        assert float(abs(mp.mpf(v) - ov) / abs(ov)) <= 1e-10
        assert float(abs(mp.mpf(d) - od) / abs(od)) <= 1e-10
        checked += 1


def test_pcf_eval_order_zero_gaussian():
    r = pcf_eval(0.0, 2.0)
    assert r.value == pytest.approx(math.exp(-1.0), rel=1e-12)
    assert r.derivative == pytest.approx(-1.0 * math.exp(-1.0), rel=1e-12)


def test_pcf_eval_hermite_three():
    # 2^(-3/2) e^(-9/16) H_3(1.5/sqrt2), H_3(y) = 8y^3 - 12y
    y = 1.5 / math.sqrt(2.0)
    expect = 2.0 ** -1.5 * math.exp(-9.0 / 16.0) * (8 * y ** 3 - 12 * y)
    assert pcf_eval(3.0, 1.5).value == pytest.approx(expect, rel=1e-12)
    assert expect == pytest.approx(-0.6410056778222884, rel=1e-13)


@pytest.mark.parametrize("nu", [-0.2565, 0.5, 2.7])
def test_pcf_eval_consistent_with_origin(nu):
    r = pcf_eval(nu, 0.0)
    v, d = pcf_at_zero(nu)
    assert r.value == v and r.derivative == d


def test_hermite_reduction_grid():
    xs = np.arange(-6.0, 6.0 + 1e-9, 0.25)
    for n in range(13):
        ref = (2.0 ** (-0.5 * n) * np.exp(-xs ** 2 / 4.0)
               * hermite_h(n, xs / math.sqrt(2.0)))
        got = np.array([pcf_eval(float(n), float(x)).value for x in xs])
        assert np.all(np.abs(got - ref) <= 1e-10 * np.maximum(1.0, np.abs(ref)))


@pytest.mark.parametrize("nu", [0.3, 1.7, 4.2])
def test_three_term_recurrence(nu):
    for x in np.arange(-5.0, 5.0 + 1e-9, 0.25):
        em = pcf_eval(nu - 1.0, float(x))
        e0 = pcf_eval(nu, float(x))
        ep = pcf_eval(nu + 1.0, float(x))
        resid = ep.value - x * e0.value + nu * em.value
        scale = max(abs(ep.value), abs(x * e0.value), abs(nu * em.value), 1e-300)
        assert abs(resid) / scale <= 1e-8


@pytest.mark.parametrize("nu", [0.3, 1.7, 4.2])
def test_derivative_identity(nu):
    for x in np.arange(-5.0, 5.0 + 1e-9, 0.25):
        em = pcf_eval(nu - 1.0, float(x))
        e0 = pcf_eval(nu, float(x))
        resid = e0.derivative + 0.5 * x * e0.value - nu * em.value
        scale = max(abs(e0.derivative), abs(0.5 * x * e0.value),
                    abs(nu * em.value), 1e-300)
        assert abs(resid) / scale <= 1e-8


def test_derivative_against_finite_difference():
    h = 1e-5
    for nu, x in [(0.4, 1.3), (2.7, -2.0), (5.1, 6.2), (-0.8, 3.7), (12.3, 5.0)]:
        d = pcf_eval(nu, x).derivative
        fd = (pcf_eval(nu, x + h).value - pcf_eval(nu, x - h).value) / (2 * h)
        assert d == pytest.approx(fd, rel=1e-6)


def test_series_march_overlap_window():
    # power series and the ODE march must agree through the hand-off zone
    for nu in [-1.3, -0.6, 0.0, 0.45]:
        xs = np.linspace(3.2, 4.0, 9)
        sv, sd = sf._series_base(nu, xs)
        seed_v, seed_d, seed_ls = sf._asym_pos(nu, np.array([sf.X_ASYM]))
        mv, md, mls = sf._weber_march(nu, sf.X_ASYM, float(seed_v[0]),
                                      float(seed_d[0]), float(seed_ls[0]),
                                      xs, 0.5)
        mv = mv * np.exp(mls)
        assert np.all(np.abs(mv - sv) <= 1e-9 * np.abs(sv))


def test_oracle_sweep_broad():
    cases = []
    for nu in [-1.49, -0.7, 0.0, 0.49]:
        cases += [(nu, x) for x in (-20.0, -6.3, -1.5, 0.5, 4.5, 6.3, 15.0)]
    for nu in [0.7, 4.2, 12.3, 31.7, 101.6]:
        cases += [(nu, x) for x in (-12.0, -1.0, 1.0, 6.0, 17.0)]
    for nu in [-2.5, -50.2]:
        cases += [(nu, x) for x in (-10.0, 0.0, 3.0)]
    for nu, x in cases:
        r = pcf_eval(nu, x)
        ov, od = oracles.mp_pcf(nu, x)
        assert oracles.scale_aware_error(r.value, r.derivative, ov, od, x) <= 3e-9, \
            (nu, x)


def test_supported_box_is_finite():
    for nu in (-200.0, -37.5, 0.0, 137.2, 200.0):
        for x in (-40.0, -11.7, 0.0, 23.4, 40.0):
            r = pcf_eval(nu, x)
            assert math.isfinite(r.value) and math.isfinite(r.derivative)


@pytest.mark.parametrize("nu,x", [(201.0, 1.0), (-201.0, 1.0),
                                  (1.0, 41.0), (1.0, -41.0),
                                  (float("nan"), 0.0)])
def test_domain_errors(nu, x):
    with pytest.raises(DomainError):
        pcf_eval(nu, x)


def test_hermite_h_basics():
    assert hermite_h(0, 3.21) == 1.0
    assert hermite_h(3, 1.0) == pytest.approx(-4.0, rel=1e-15)
    # H_5(y) = 32 y^5 - 160 y^3 + 120 y
    assert hermite_h(5, 0.7) == pytest.approx(34.49824, rel=1e-13)
    assert hermite_h(5, 0.7) == pytest.approx(
        oracles.hermite_poly_explicit(5, 0.7), rel=1e-12)


def test_hermite_h_array_and_domain():
    ys = np.linspace(-2, 2, 5)
    vals = hermite_h(2, ys)
    assert np.allclose(vals, 4 * ys ** 2 - 2.0)
    with pytest.raises(DomainError):
        hermite_h(201, 0.0)
    with pytest.raises(DomainError):
        hermite_h(-1, 0.0)


def test_grid_vs_scalar_consistency():
    xs = np.array([-9.0, -3.0, 0.0, 2.5, 14.0])
    v, d, ls = sf.pcf_eval_grid(7.3, xs)
    for i, x in enumerate(xs):
        r = pcf_eval(7.3, float(x))
        assert v[i] * math.exp(ls[i]) == pytest.approx(r.value, rel=1e-12, abs=1e-300)


def test_grid_many_shares_ladder():
    xs = np.linspace(0.0, 20.0, 101)
    orders = [0.25 + k for k in range(0, 12)] + [float(k) for k in range(5)]
    res = sf.pcf_eval_grid_many(orders, xs)
    for nu in orders:
        v, d, ls = res[nu]
        vv, dd, ll = sf.pcf_eval_grid(nu, xs)
        assert np.allclose(v * np.exp(ls), vv * np.exp(ll), rtol=1e-12, atol=1e-280)
