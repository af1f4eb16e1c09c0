import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from freecs import analytic
from freecs.errors import InvalidInputError
from freecs.families import make_cs_family, z_from_initial
from freecs.semiclassical import (
    DimensionalPacket,
    Verdict,
    classify,
    eval_dimensional,
    sigma_x_of_t,
    spreading_to_travel_ratio_sq,
)
from freecs.units import UnitSystem, to_dimensional, to_dimensionless

U = UnitSystem(1e-7)


def packet(v=1e3, sigma_x=5e-8, x0=0.0, units=U):
    return DimensionalPacket.from_velocity(v, sigma_x, units, x0=x0)


def test_sigma_at_zero():
    assert sigma_x_of_t(packet(), 0.0) == 5e-8


def test_sigma_at_symmetry_point():
    s = 5e-8
    t = 2 * U.mass * s * s / U.hbar
    assert sigma_x_of_t(packet(sigma_x=s), t) == pytest.approx(math.sqrt(2) * s, rel=1e-14)


@given(st.floats(-1e-8, 1e-8), st.floats(1e-9, 1e-6))
def test_sigma_matches_dimensionless(t, sigma_x):
    pk = packet(sigma_x=sigma_x)
    _, tau, _ = to_dimensionless(0.0, t, 0.0, U)
    fam = make_cs_family(sigma_x / U.length_scale)
    sq_tau = analytic.moments(tau, 0, fam).sigma_q
    assert sigma_x_of_t(pk, t) == pytest.approx(sq_tau * U.length_scale, rel=1e-12)


def test_peak_density():
    pk = packet(x0=2e-8)
    t = 3e-10
    xt = pk.x_of_t(t)
    s2 = pk.sigma_x**2 + (U.hbar * t) ** 2 / (4 * U.mass**2 * pk.sigma_x**2)
    _, rho = eval_dimensional(pk, xt, t)
    assert rho == pytest.approx((2 * math.pi * s2) ** -0.5, rel=1e-13)
    _, rho0 = eval_dimensional(pk, 2e-8, 0.0)
    assert rho0 == pytest.approx((2 * math.pi * pk.sigma_x**2) ** -0.5, rel=1e-13)


def test_density_is_modulus_squared_and_normalized():
    pk = packet(v=300.0)
    t = 5e-10
    s = sigma_x_of_t(pk, t)
    x = np.linspace(pk.x_of_t(t) - 12 * s, pk.x_of_t(t) + 12 * s, 6001)
    psi, rho = eval_dimensional(pk, x, t)
    np.testing.assert_allclose(rho, np.abs(psi) ** 2, rtol=1e-13)
    assert np.trapezoid(rho, x) == pytest.approx(1.0, abs=1e-10)


@given(st.floats(1e-9, 1e-5), st.floats(-2e3, 2e3), st.floats(-1e-9, 1e-9), st.floats(1e-9, 1e-6))
def test_matches_dimensionless_path(length, v, t, sigma_x):
    u = UnitSystem(length)
    pk = DimensionalPacket.from_velocity(v, sigma_x, u, x0=0.3 * sigma_x)
    x = pk.x_of_t(t) + np.linspace(-4, 4, 17) * sigma_x_of_t(pk, t)
    q, tau, p = to_dimensionless(x, t, pk.p_x, u)
    fam = make_cs_family(sigma_x / length)
    label = z_from_initial(pk.x0 / length, p, fam)
    psi, _ = eval_dimensional(pk, x, t)
    ref = analytic.eval_cs(q, tau, label, fam) / math.sqrt(length)
    np.testing.assert_allclose(psi, ref, rtol=1e-9, atol=1e-12 * np.max(np.abs(ref)))


def test_cyclotron_example():
    rep = classify(packet(1e3, 5e-8))
    assert rep.wavelength == pytest.approx(7.27e-7, rel=1e-3)
    assert rep.bound == pytest.approx(6.28e-7, rel=1e-3)
    assert rep.ratio == pytest.approx(1.16, abs=0.01)
    assert rep.verdict is Verdict.MARGINAL


def test_fast_electron_is_semiclassical():
    rep = classify(packet(1e6, 5e-8))
    assert rep.ratio == pytest.approx(1.16e-3, rel=0.01)
    assert rep.verdict is Verdict.SEMICLASSICAL


def test_resting_packet_is_quantum():
    rep = classify(packet(0.0))
    assert rep.verdict is Verdict.QUANTUM
    assert math.isinf(rep.ratio)
    assert json.loads(json.dumps(rep.to_json()))["ratio"] == "inf"


def test_slow_packet_is_quantum():
    assert classify(packet(1.0, 5e-8)).verdict is Verdict.QUANTUM


@given(st.floats(1e-3, 1e3), st.floats(1.0, 1e6), st.floats(1e-9, 1e-5))
def test_ratio_depends_on_product_only(alpha, v, sigma_x):
    a = classify(packet(v, sigma_x))
    b = classify(packet(v * alpha, sigma_x / alpha))
    assert a.ratio == pytest.approx(b.ratio, rel=1e-12)
    assert a.ratio == pytest.approx(U.hbar / (2 * U.mass * v * sigma_x), rel=1e-12)
    assert a.ratio == pytest.approx(a.wavelength / a.bound, rel=1e-15)


@given(st.floats(1.0, 1e6), st.floats(1e-9, 1e-5), st.floats(1e-12, 1e-6))
def test_two_forms_of_criterion_agree(v, sigma_x, t):
    pk = packet(v, sigma_x)
    assert spreading_to_travel_ratio_sq(pk, t) == pytest.approx(classify(pk).ratio ** 2, rel=1e-12)


def test_invalid_packet():
    with pytest.raises(InvalidInputError):
        packet(sigma_x=0.0)
    with pytest.raises(InvalidInputError):
        DimensionalPacket(math.nan, 0.0, 1e-8, U)


def test_roundtrip_consistency_with_units():
    x, t, p_x = to_dimensional(1.0, 1.0, 2.0, U)
    assert (x, p_x) == pytest.approx((1e-7, 2 * U.hbar / 1e-7), rel=1e-14)
