"""Numerical oracles that check the closed forms without reusing them.

* ``schrodinger_residual``: central differences in tau and a 4th-order
  stencil in q applied to i d/dtau psi + (1/2) d2/dq2 psi.
* ``propagate_spectral``: exact free evolution, one phase factor per
  Fourier mode.
* quadrature of norms, moments, overlaps and the smeared resolution of the
  identity over the z-plane.
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from .analytic import Moments, eval_generalized_cs, eval_glauber_cs
from .errors import AliasingRiskError, GridTooCoarseError, InvalidInputError, TruncationRadiusError
from .families import z_from_initial
from .fields import Grid, WaveField

EDGE_TOL = 1e-12
COARSE_DISAGREEMENT = 0.1


@dataclass(frozen=True)
class ResidualReport:
    max_abs_residual: float
    rel_residual: float
    dq: float
    dt: float
    # max |D2_h - D2_2h| / max |D2_h|; grows toward O(1) when h under-resolves psi
    step_halving_disagreement: float

    def to_json(self):
        return asdict(self)


def _d2_4th(f, h):
    """4th-order central second difference on f[2:-2]."""
    return (-f[4:] + 16.0 * f[3:-1] - 30.0 * f[2:-2] + 16.0 * f[1:-3] - f[:-4]) / (12.0 * h * h)


def schrodinger_residual(psi, grid, tau, dt):
    """Finite-difference residual of the free Schroedinger equation.

    ``psi(q, tau)`` must accept an array of q.  The residual
    r = i [psi(tau+dt) - psi(tau-dt)] / (2 dt) + D2 psi / 2 is evaluated on
    interior nodes and reported absolutely and relative to max |D2 psi / 2|.
    """
    if not dt > 0:
        raise InvalidInputError(f"dt must be > 0, got {dt!r}")
    if grid.n_points < 16:
        raise InvalidInputError("residual needs at least 16 grid points")
    q = grid.points
    h = grid.spacing
    f0 = np.asarray(psi(q, tau), dtype=complex)
    fp = np.asarray(psi(q, tau + dt), dtype=complex)
    fm = np.asarray(psi(q, tau - dt), dtype=complex)

    d2 = _d2_4th(f0, h)
    kin = 0.5 * d2
    r = 1j * (fp[2:-2] - fm[2:-2]) / (2.0 * dt) + kin
    scale = np.max(np.abs(kin))

    # same stencil on every other node (step 2h); compare where both exist
    ev = f0[::2]
    d2_coarse = _d2_4th(ev, 2.0 * h)
    fine_on_even = d2[::2][1 : 1 + d2_coarse.size]
    d2_scale = np.max(np.abs(d2))
    disagreement = (
        float(np.max(np.abs(fine_on_even - d2_coarse)) / d2_scale) if d2_scale > 0 else 0.0
    )
    if disagreement > COARSE_DISAGREEMENT:
        raise GridTooCoarseError(
            f"second-difference estimates at h and 2h differ by {disagreement:.3g} "
            f"of max |D2 psi| (limit {COARSE_DISAGREEMENT}); refine the grid"
        )
    max_abs = float(np.max(np.abs(r)))
    return ResidualReport(
        max_abs_residual=max_abs,
        rel_residual=float(max_abs / scale) if scale > 0 else math.inf,
        dq=h,
        dt=dt,
        step_halving_disagreement=disagreement,
    )


def _slope(steps, errs):
    return float(np.polyfit(np.log(steps), np.log(errs), 1)[0])


def residual_orders(psi, tau, q_min=-20.0, q_max=20.0, dt0=0.05, n0=256, dt_fine=1e-5, n_fine=4096, levels=4):
    """Observed convergence orders (time, space) of the residual.

    The time order halves dt from dt0 on the fine grid; the space order
    doubles n from n0 with dt_fine, so each sweep is dominated by one error
    source.  Returns (dt_slope, h_slope, dt_errors, h_errors).
    """
    fine = Grid(q_min, q_max, n_fine)
    dts = [dt0 / 2**k for k in range(levels)]
    dt_err = [schrodinger_residual(psi, fine, tau, dt).max_abs_residual for dt in dts]
    grids = [Grid(q_min, q_max, n0 * 2**k) for k in range(levels)]
    h_err = [schrodinger_residual(psi, g, tau, dt_fine).max_abs_residual for g in grids]
    return (
        _slope(dts, dt_err),
        _slope([g.spacing for g in grids], h_err),
        dt_err,
        h_err,
    )


def edge_amplitude(values, band=None):
    """max |psi| over the outer ``band`` nodes at each end (default n // 64)."""
    values = np.asarray(values)
    n = values.size
    band = max(1, n // 64) if band is None else band
    return float(max(np.max(np.abs(values[:band])), np.max(np.abs(values[-band:]))))


def check_edges(values, what="field"):
    a = edge_amplitude(values)
    if a >= EDGE_TOL:
        raise AliasingRiskError(f"{what}: |psi| reaches {a:.3g} at the grid edges (limit {EDGE_TOL:g})")


def _require_spectral(grid):
    if not grid.is_spectral:
        raise InvalidInputError(
            "spectral operations need a periodic grid (endpoint=False) whose "
            f"n_points is a power of two >= 16, got {grid}"
        )


def wavenumbers(grid):
    """k_j = 2 pi j / L in FFT order, j in [-n/2, n/2)."""
    return 2.0 * np.pi * np.fft.fftfreq(grid.n_points, d=grid.spacing)


def propagate_spectral(field, tau1):
    """Evolve a field freely from field.tau to tau1 by exact phase multiplication."""
    _require_spectral(field.grid)
    check_edges(field.values, "initial field")
    k = wavenumbers(field.grid)
    phase = np.exp(-0.5j * k * k * (tau1 - field.tau))
    out = np.fft.ifft(np.fft.fft(field.values) * phase)
    check_edges(out, "propagated field")
    return WaveField(field.grid, out, float(tau1), dict(field.meta))


def l2_distance(a, b, grid):
    return float(math.sqrt(np.sum(np.abs(np.asarray(a) - np.asarray(b)) ** 2) * grid.spacing))


def _integrate(y, grid):
    if grid.endpoint:
        return np.trapezoid(y, dx=grid.spacing)
    return np.sum(y) * grid.spacing


def quadrature_norm(field):
    check_edges(field.values)
    return float(_integrate(np.abs(field.values) ** 2, field.grid))


def spectral_derivative(values, grid):
    return np.fft.ifft(1j * wavenumbers(grid) * np.fft.fft(values))


def quadrature_moments(field):
    """Moments of the (renormalised) field; momentum via spectral differentiation."""
    _require_spectral(field.grid)
    check_edges(field.values)
    psi = field.values
    q = field.grid.points
    h = field.grid.spacing
    dpsi = spectral_derivative(psi, field.grid)
    rho = np.abs(psi) ** 2
    norm = np.sum(rho) * h
    mq = np.sum(q * rho) * h / norm
    mq2 = np.sum(q * q * rho) * h / norm
    mp = (np.sum(np.conj(psi) * (-1j) * dpsi) * h).real / norm
    mp2 = np.sum(np.abs(dpsi) ** 2) * h / norm
    # (qp + pq) / 2 = Re(q p) in expectation
    mqp = (np.sum(np.conj(psi) * q * (-1j) * dpsi) * h).real / norm
    return Moments(
        mean_q=float(mq),
        mean_p=float(mp),
        sigma_q=float(math.sqrt(max(mq2 - mq * mq, 0.0))),
        sigma_p=float(math.sqrt(max(mp2 - mp * mp, 0.0))),
        sigma_qp=float(mqp - mq * mp),
    )


def overlap_quadrature(z1, z2, tau, fam, grid, phase="glauber"):
    """int conj(psi_z1) psi_z2 dq on ``grid``.

    ``phase="glauber"`` integrates the displacement-operator states, which is
    the convention of ``analytic.overlap``; ``"closed"`` uses the closed-form
    wavefunctions as they are.
    """
    if phase not in ("glauber", "closed"):
        raise InvalidInputError(f"phase must be 'glauber' or 'closed', got {phase!r}")
    ev = eval_glauber_cs if phase == "glauber" else eval_generalized_cs
    q = grid.points
    a = ev(q, tau, z1, fam)
    b = ev(q, tau, z2, fam)
    check_edges(a, "bra")
    check_edges(b, "ket")
    return complex(_integrate(np.conj(a) * b, grid))


def completeness_check(q, q_prime, tau, fam, test_width=1.0, radius=None, n_radial=None, n_angular=None):
    """|F(q) - f(q)| for the smeared resolution of the identity.

    f(x) = exp(-(x - q_prime)**2 / (2 test_width**2)) and
    F(q) = (1/pi) int d2z <q|z,tau> int dx <z,tau|x> f(x),
    with the z-integral on a disk |z| <= radius (Gauss-Legendre in |z|,
    trapezoid in arg z) and the x-integral by trapezoid.

    With ``radius=None`` the disk starts at 8 + max(|z(q)|, |z(q_prime)|) and
    grows by 25% until the integrand on the rim is below 1e-12; the
    envelope widens with |tau| because f spreads in the tau-frame.  An
    explicit radius that fails that test raises TruncationRadiusError.
    """
    gen = fam.generalized
    w = float(test_width)
    if not w > 0:
        raise InvalidInputError("test_width must be > 0")
    z_ref = max(abs(z_from_initial(q, 0.0, gen).z), abs(z_from_initial(q_prime, 0.0, gen).z))

    def f(x):
        return np.exp(-((x - q_prime) ** 2) / (2.0 * w * w))

    def make_integrand(rad):
        # inner x grid resolves the largest momentum on the disk plus both envelopes
        k_max = 2.0 * abs(gen.c1) * rad + 8.0 * abs(gen.c1) + 8.0 / w
        half = 12.0 * w
        nx = int(math.ceil(2.0 * half * k_max / math.pi)) + 1
        x = np.linspace(q_prime - half, q_prime + half, nx)
        dx = x[1] - x[0]
        fx = f(x)

        def integrand(zvals):
            out = np.empty(zvals.size, dtype=complex)
            for i in range(0, zvals.size, 512):
                zc = zvals[i : i + 512]
                kets = eval_generalized_cs(x[None, :], tau, zc[:, None], gen)
                inner = np.trapezoid(np.conj(kets) * fx[None, :], dx=dx, axis=1)
                out[i : i + 512] = eval_generalized_cs(q, tau, zc, gen) * inner
            return out

        return integrand

    def rim_max(rad, n_ang):
        theta = 2.0 * np.pi * np.arange(n_ang) / n_ang
        return float(np.max(np.abs(make_integrand(rad)(rad * np.exp(1j * theta)))))

    auto = radius is None
    radius = 8.0 + z_ref if auto else float(radius)
    for _ in range(40):
        n_ang = 2 * int(math.ceil(8.0 * radius)) if n_angular is None else n_angular
        rim = rim_max(radius, n_ang)
        if rim <= EDGE_TOL:
            break
        if not auto:
            raise TruncationRadiusError(
                f"integrand is {rim:.3g} on |z| = {radius:g} (limit {EDGE_TOL:g}); increase radius"
            )
        radius *= 1.25
    else:
        raise TruncationRadiusError(f"integrand has not decayed by |z| = {radius:g}")

    n_r = int(math.ceil(8.0 * radius)) if n_radial is None else n_radial
    x_r, w_r = np.polynomial.legendre.leggauss(n_r)
    r = 0.5 * radius * (x_r + 1.0)
    w_r = 0.5 * radius * w_r
    theta = 2.0 * np.pi * np.arange(n_ang) / n_ang
    zs = (r[:, None] * np.exp(1j * theta[None, :])).ravel()
    weights = ((w_r * r)[:, None] * np.full(n_ang, 2.0 * np.pi / n_ang)[None, :]).ravel()
    F = np.sum(weights * make_integrand(radius)(zs)) / np.pi
    return float(abs(F - f(q)))
