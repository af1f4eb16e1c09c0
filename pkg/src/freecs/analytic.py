"""Closed-form generalized CS, densities, moments and uncertainty products.

Everything is in reduced units (hbar = m = 1, see ``units``).  The generalized
CS labelled by z in the family (c1, c2) is

    <q|z,tau> = (sqrt(2 pi) g)^(-1/2) exp{ i(p q - p**2 tau / 2)
                                           - (c1 / g) (q - q(tau))**2 / 2 },

with g = c2 + i c1 tau and the straight-line mean q(tau) = q0 + p tau.
Functions broadcast over array ``q``.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, InvalidInputError, SingularFamilyError
from .families import CSFamily, as_z, g_of_tau, initial_from_z
from .fields import WaveField

N_MAX = 128
_QUARTER_ROOT_2PI = (2.0 * math.pi) ** -0.25
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class Moments:
    """First and second moments of a state at one instant."""

    mean_q: float
    mean_p: float
    sigma_q: float
    sigma_p: float
    sigma_qp: float

    @property
    def rs_product(self):
        return self.sigma_q**2 * self.sigma_p**2 - self.sigma_qp**2

    @property
    def heisenberg_product(self):
        return self.sigma_q * self.sigma_p


def _g(fam, tau):
    g = g_of_tau(fam, tau)
    if np.any(g == 0):
        raise SingularFamilyError(f"g(tau) = 0 at tau = {tau!r}")
    return g


def arg_g(fam, tau):
    """Continuous phase of g(tau), equal to the principal arg of c2 at tau = 0.

    g / c1 = c2 / c1 + i tau stays in the open right half-plane because
    Re(c2 / c1) = 1 / (2 |c1|**2) > 0, so its principal argument is already
    continuous in tau and the shift relative to tau = 0 needs no unwrapping.
    """
    g = _g(fam, tau)
    return cmath.phase(fam.c2) + np.angle(g / fam.c1) - cmath.phase(fam.c2 / fam.c1)


def _prefactor(fam, tau):
    """(sqrt(2 pi) g(tau))^(-1/2) on the branch tracked from tau = 0."""
    g = _g(fam, tau)
    return _QUARTER_ROOT_2PI * np.abs(g) ** -0.5 * np.exp(-0.5j * arg_g(fam, tau))


def eval_generalized_cs(q, tau, label, fam):
    fam = fam.generalized
    q0, p = initial_from_z(as_z(label), fam)
    g = _g(fam, tau)
    dq = np.asarray(q) - (q0 + p * tau)
    phase = 1j * (p * np.asarray(q) - 0.5 * p * p * tau)
    return _prefactor(fam, tau) * np.exp(phase - 0.5 * (fam.c1 / g) * dq * dq)


def eval_cs(q, tau, label, fam):
    """CS of a free particle written directly in terms of sigma_q.

    Independent code path from eval_generalized_cs; the two agree on the
    embedding c1 = 1/(2 sigma_q), c2 = sigma_q.
    """
    if not isinstance(fam, CSFamily):
        raise InvalidInputError("eval_cs needs a CSFamily; use eval_generalized_cs")
    s = fam.sigma_q
    z = as_z(label)
    q0, p = 2.0 * s * z.real, z.imag / s
    q = np.asarray(q)
    dq = q - (q0 + p * tau)
    num = np.exp(1j * (p * q - 0.5 * p * p * tau) - dq * dq / (4.0 * (s * s + 0.5j * tau)))
    return num / np.sqrt((s + 0.5j * tau / s) * math.sqrt(2.0 * math.pi))


def density(q, tau, label, fam):
    """|<q|z,tau>|**2: a Gaussian of width |g(tau)| centred on q0 + p tau."""
    gen = fam.generalized
    q0, p = initial_from_z(as_z(label), gen)
    ag = np.abs(_g(gen, tau))
    dq = np.asarray(q) - (q0 + p * tau)
    return _INV_SQRT_2PI / ag * np.exp(-dq * dq / (2.0 * ag * ag))


def _sigma_qp_complex(fam, tau):
    return 1j * (0.5 - _g(fam, tau) * fam.c1.conjugate())


def moments(tau, label, fam):
    gen = fam.generalized
    q0, p = initial_from_z(as_z(label), gen)
    g = _g(gen, tau)
    sqp = _sigma_qp_complex(gen, tau)
    if abs(sqp.imag) > 1e-12 * max(1.0, abs(sqp)):
        raise SingularFamilyError(f"sigma_qp has imaginary part {sqp.imag!r}")
    return Moments(
        mean_q=q0 + p * tau,
        mean_p=p,
        sigma_q=abs(g),
        sigma_p=abs(gen.c1),
        sigma_qp=sqp.real,
    )


def rs_product(tau, fam):
    """sigma_q**2 sigma_p**2 - sigma_qp**2; 1/4 for every valid family."""
    gen = fam.generalized
    sq = abs(_g(gen, tau))
    sp = abs(gen.c1)
    sqp = _sigma_qp_complex(gen, tau).real
    return sq * sq * sp * sp - sqp * sqp


def heisenberg_product(tau, fam):
    """sigma_q(tau) sigma_p from the phase form sqrt(1/4 + [..]**2) >= 1/2."""
    gen = fam.generalized
    a1, a2 = abs(gen.c1), abs(gen.c2)
    s = a1 * a2 * math.sin(gen.mu2 - gen.mu1) + a1 * a1 * tau
    return math.sqrt(0.25 + s * s)


def overlap(z1, z2):
    """<z1,tau|z2,tau> for Glauber-phase states; independent of tau and of the family.

    Closed-form states carry the extra factor exp(i[theta(z2) - theta(z1)]),
    see glauber_phase; |overlap| is convention free.
    """
    z1, z2 = as_z(z1), as_z(z2)
    return cmath.exp(z1.conjugate() * z2 - 0.5 * (abs(z1) ** 2 + abs(z2) ** 2))


def _check_n(n, n_max):
    if int(n) != n or n < 0:
        raise InvalidInputError(f"Fock index must be a non-negative integer, got {n!r}")
    if n > n_max:
        raise CapacityError(f"n = {n} exceeds n_max = {n_max}")


def vacuum(q, tau, fam):
    gen = fam.generalized
    g = _g(gen, tau)
    q = np.asarray(q)
    return _prefactor(gen, tau) * np.exp(-0.5 * (gen.c1 / g) * q * q)


def fock_ladder(n, q, tau, fam, n_max=N_MAX):
    """Yield <q|k,tau> for k = 0..n.

    A(tau) acting on P_k(q) <q|0,tau> gives g P_k', which together with the
    raising recurrence P_{k+1} = [(q/g) P_k - conj(g) P_k'] / sqrt(k+1)
    collapses to the three-term form
        psi_{k+1} = [(q/g) psi_k - (conj(g)/g) sqrt(k) psi_{k-1}] / sqrt(k+1).
    """
    _check_n(n, n_max)
    gen = fam.generalized
    g = complex(_g(gen, tau))
    q = np.asarray(q)
    prev = np.zeros_like(q, dtype=complex)
    cur = vacuum(q, tau, gen) * np.ones_like(prev)
    yield cur
    ratio = g.conjugate() / g
    for k in range(n):
        nxt = ((q / g) * cur - ratio * math.sqrt(k) * prev) / math.sqrt(k + 1)
        prev, cur = cur, nxt
        yield cur


def fock_state(n, q, tau, fam, n_max=N_MAX):
    """<q|n,tau> = <q|(A^dagger)^n|0,tau> / sqrt(n!)."""
    for psi in fock_ladder(n, q, tau, fam, n_max):
        pass
    return psi


def fock_coefficients(n, tau, fam, n_max=N_MAX):
    """Ascending coefficients of the polynomials P_0..P_n with <q|k> = P_k(q) <q|0>.

    Built from P_{k+1} = [(q/g) P_k - conj(g) P_k'] / sqrt(k+1), P_0 = 1.
    Fine for small n; evaluating high-degree coefficient arrays loses digits
    to cancellation, which is why fock_state uses the three-term form.
    """
    _check_n(n, n_max)
    gen = fam.generalized
    g = complex(_g(gen, tau))
    polys = [np.array([1.0 + 0j])]
    for k in range(n):
        pk = polys[-1]
        up = np.concatenate(([0j], pk / g))
        deriv = np.concatenate((pk[1:] * np.arange(1, len(pk)), [0j, 0j]))
        polys.append((up - g.conjugate() * deriv) / math.sqrt(k + 1))
    return polys


def glauber_tail_bound(z, n_trunc):
    """Size of the first omitted coefficient e^{-|z|^2/2} |z|^(N+1) / sqrt((N+1)!)."""
    a = abs(as_z(z))
    if a == 0:
        return 0.0
    return math.exp(-0.5 * a * a + (n_trunc + 1) * math.log(a) - 0.5 * math.lgamma(n_trunc + 2))


def glauber_sum(label, q, tau, fam, n_trunc, n_max=N_MAX):
    """Partial sum e^{-|z|^2/2} sum_{n<=n_trunc} z^n / sqrt(n!) <q|n,tau>.

    Converges to the closed-form CS up to a constant phase; pick n_trunc with
    glauber_tail_bound.
    """
    _check_n(n_trunc, n_max)
    z = as_z(label)
    w = math.exp(-0.5 * abs(z) ** 2)
    total = 0j
    for k, psi in enumerate(fock_ladder(n_trunc, q, tau, fam, n_max)):
        total = total + w * psi
        w = w * z / math.sqrt(k + 1)
    return total


def glauber_phase(label, fam):
    """Phase theta(z) with D(z, tau)|0,tau> = e^{i theta} x (closed-form CS).

    theta = Im[c1 q0**2 / (2 c2) - conj(c2) z**2 / (2 c2)], independent of q
    and tau; for a CSFamily it is -q0 p / 2.  The overlap formula
    exp(conj(z1) z2 - (|z1|**2 + |z2|**2) / 2) holds in this convention.
    """
    gen = fam.generalized
    z = as_z(label)
    q0, _ = initial_from_z(z, gen)
    return (gen.c1 * q0 * q0 / (2.0 * gen.c2) - gen.c2.conjugate() * z * z / (2.0 * gen.c2)).imag


def eval_glauber_cs(q, tau, label, fam):
    """Closed-form CS rephased to match the displacement-operator construction."""
    return np.exp(1j * glauber_phase(label, fam)) * eval_generalized_cs(q, tau, label, fam)


def plane_wave(q, tau, p):
    """(2 pi)^(-1/2) exp[i(p q - p**2 tau / 2)]; crests move at p/2."""
    q = np.asarray(q)
    return _INV_SQRT_2PI * np.exp(1j * (p * q - 0.5 * p * p * tau))


def cs_field(label, fam, tau, grid):
    """Sample the CS on ``grid``; CSFamily goes through eval_cs."""
    q = grid.points
    if isinstance(fam, CSFamily):
        values = eval_cs(q, tau, label, fam)
    else:
        values = eval_generalized_cs(q, tau, label, fam)
    return WaveField(grid, values, float(tau))
