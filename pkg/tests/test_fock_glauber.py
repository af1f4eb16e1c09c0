import math

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from freecs import analytic
from freecs.errors import CapacityError, InvalidInputError
from freecs.families import make_cs_family, make_generalized
from freecs.fields import REFERENCE_GRID

from conftest import random_generalized

Q = np.linspace(-10.0, 10.0, 801)


def test_n0_is_vacuum(ref_family):
    np.testing.assert_allclose(
        analytic.fock_state(0, Q, 0.7, ref_family), analytic.eval_cs(Q, 0.7, 0, ref_family), atol=1e-15
    )


@pytest.mark.parametrize("fam", [make_cs_family(0.8), make_generalized(1j, 0.5j)])
def test_n1_against_symbolic_raising(fam):
    # A^dagger = conj(c1) q - conj(g) d/dq applied symbolically to the vacuum
    tau = 0.6
    g = complex(analytic.g_of_tau(fam.generalized, tau))
    c1 = complex(fam.c1)
    q = sp.symbols("q", real=True)
    c1s, gs = sp.nsimplify(c1.real) + sp.I * sp.nsimplify(c1.imag), sp.Float(g.real, 30) + sp.I * sp.Float(g.imag, 30)
    vac = sp.exp(-c1s / gs * q**2 / 2)
    raised = sp.conjugate(c1s) * q * vac - sp.conjugate(gs) * sp.diff(vac, q)
    f = sp.lambdify(q, sp.simplify(raised / vac), "numpy")
    expected = f(Q) * analytic.vacuum(Q, tau, fam)
    np.testing.assert_allclose(analytic.fock_state(1, Q, tau, fam), expected, atol=1e-13)
    np.testing.assert_allclose(
        analytic.fock_state(1, Q, tau, fam), (Q / g) * analytic.vacuum(Q, tau, fam), atol=1e-14
    )


@pytest.mark.parametrize("tau", [0.0, 1.3])
def test_coefficient_recurrence_matches_three_term(tau):
    fam = random_generalized(np.random.default_rng(7))
    q = np.linspace(-3, 3, 61)
    polys = analytic.fock_coefficients(12, tau, fam)
    vac = analytic.vacuum(q, tau, fam)
    for n, psi in enumerate(analytic.fock_ladder(12, q, tau, fam)):
        from_coeffs = np.polynomial.polynomial.polyval(q, polys[n]) * vac
        np.testing.assert_allclose(psi, from_coeffs, atol=1e-11)


@pytest.mark.parametrize("fam", [make_cs_family(2**-0.5), make_cs_family(1.9), make_generalized(1j, 0.5j)])
@pytest.mark.parametrize("tau", [0.0, 1.0])
def test_orthonormality(fam, tau):
    grid = REFERENCE_GRID
    states = np.array(list(analytic.fock_ladder(6, grid.points, tau, fam)))
    gram = states.conj() @ states.T * grid.spacing
    np.testing.assert_allclose(gram, np.eye(7), atol=1e-8)


def test_capacity():
    fam = make_cs_family(1.0)
    analytic.fock_state(128, Q, 0.0, fam)
    with pytest.raises(CapacityError):
        analytic.fock_state(129, Q, 0.0, fam)
    with pytest.raises(CapacityError):
        analytic.glauber_sum(1.0, Q, 0.0, fam, 200)
    with pytest.raises(InvalidInputError):
        analytic.fock_state(-1, Q, 0.0, fam)
    assert analytic.fock_state(200, 0.0, 0.0, fam, n_max=256) is not None


def test_high_n_stays_normalized():
    fam = make_cs_family(1.0)
    grid = REFERENCE_GRID
    psi = analytic.fock_state(100, grid.points, 0.5, fam)
    assert np.sum(np.abs(psi) ** 2) * grid.spacing == pytest.approx(1.0, abs=1e-10)


def test_glauber_vacuum_exact(ref_family):
    for n in (0, 5, 40):
        np.testing.assert_array_equal(
            analytic.glauber_sum(0, Q, 0.3, ref_family, n), analytic.vacuum(Q, 0.3, ref_family)
        )


def _glauber_errors(z, fam, tau):
    closed = analytic.eval_generalized_cs(Q, tau, z, fam)
    series = analytic.glauber_sum(z, Q, tau, fam, 40)
    mod = np.max(np.abs(np.abs(series) - np.abs(closed)))
    mask = np.abs(closed) > 1e-6 * np.max(np.abs(closed))
    return mod, np.std(np.angle(series[mask] / closed[mask]))


@settings(max_examples=30)
@given(st.floats(0, 2), st.floats(0, 2 * math.pi), st.floats(-2, 2), st.integers(0, 2**32 - 1))
def test_glauber_converges_up_to_constant_phase(r, th, tau, seed):
    z = r * np.exp(1j * th)
    fam = random_generalized(np.random.default_rng(seed))
    mod, phase_std = _glauber_errors(z, fam, tau)
    assert mod < 1e-8
    assert phase_std < 1e-8


def test_glauber_example(ref_family):
    mod, phase_std = _glauber_errors(2**0.5 * 1j, ref_family, 0.5)
    assert mod < 1e-8 and phase_std < 1e-8


@given(st.complex_numbers(max_magnitude=3, allow_nan=False), st.floats(-2, 2))
def test_glauber_phase_is_exact_offset(z, tau):
    fam = make_cs_family(0.7)
    series = analytic.glauber_sum(z, Q, tau, fam, 80)
    np.testing.assert_allclose(series, analytic.eval_glauber_cs(Q, tau, z, fam), atol=1e-13)


def test_tail_bound_decreases():
    b = [analytic.glauber_tail_bound(2.0, n) for n in range(5, 60)]
    assert all(x > y for x, y in zip(b, b[1:]))
    assert analytic.glauber_tail_bound(2.0, 40) < 1e-12
    assert analytic.glauber_tail_bound(0, 3) == 0.0
