"""Invariant checks behind ``freecs verify``.

Each check returns a dict with the computed value, its tolerance and a pass
flag.  Random draws come from per-check child streams of one seeded
generator, so a given config and seed always produce the same report.
"""

import math

import numpy as np

from . import analytic, oracle
from .families import CSFamily

TOL = {
    "delta": 1e-12,
    "rs_product": 1e-12,
    "heisenberg": 1e-14,
    "residual": 1e-6,
    "propagate": 1e-8,
    "norm": 1e-10,
    "moments": 1e-8,
    "overlap": 1e-8,
    "glauber": 1e-8,
    "fock": 1e-8,
    "completeness": 1e-6,
}

N_RANDOM = 20
RESIDUAL_DT = 1e-4
GLAUBER_TAIL = 1e-14


def _result(name, value, **extra):
    tol = TOL[name]
    return {"name": name, "value": float(value), "tolerance": tol, "passed": bool(value <= tol), **extra}


def check_delta(cfg, rng):
    return _result("delta", abs(cfg.family.generalized.delta - 1.0))


def check_rs_product(cfg, rng):
    taus = list(cfg.taus) + list(rng.uniform(-5.0, 5.0, N_RANDOM))
    dev = max(abs(analytic.rs_product(t, cfg.family) - 0.25) for t in taus)
    return _result("rs_product", dev, n_times=len(taus))


def check_heisenberg(cfg, rng):
    gen = cfg.family.generalized
    # equals |c1||c2| at tau = 0, which is 1/2 when mu1 = mu2
    expected = 0.5 if isinstance(cfg.family, CSFamily) else abs(gen.c1) * abs(gen.c2)
    value = analytic.heisenberg_product(0.0, cfg.family)
    return _result("heisenberg", abs(value - expected), product_at_0=value)


def _psi(cfg):
    if isinstance(cfg.family, CSFamily):
        return lambda q, t: analytic.eval_cs(q, t, cfg.label, cfg.family)
    return lambda q, t: analytic.eval_generalized_cs(q, t, cfg.label, cfg.family)


def check_residual(cfg, rng):
    reports = [oracle.schrodinger_residual(_psi(cfg), cfg.oracle_grid, t, RESIDUAL_DT) for t in cfg.taus]
    worst = max(r.rel_residual for r in reports)
    return _result("residual", worst, dt=RESIDUAL_DT, dq=cfg.oracle_grid.spacing)


def check_propagate(cfg, rng):
    tau0 = float(cfg.options.get("tau0") or 0.0)
    tau1 = float(1.0 if cfg.options.get("tau1") is None else cfg.options["tau1"])
    start = analytic.cs_field(cfg.label, cfg.family, tau0, cfg.oracle_grid)
    evolved = oracle.propagate_spectral(start, tau1)
    exact = analytic.cs_field(cfg.label, cfg.family, tau1, cfg.oracle_grid)
    err = oracle.l2_distance(evolved.values, exact.values, cfg.oracle_grid)
    return _result("propagate", err, tau0=tau0, tau1=tau1)


def check_norm(cfg, rng):
    dev = max(
        abs(oracle.quadrature_norm(analytic.cs_field(cfg.label, cfg.family, t, cfg.oracle_grid)) - 1.0)
        for t in cfg.taus
    )
    return _result("norm", dev)


def check_moments(cfg, rng):
    dev = 0.0
    for t in cfg.taus:
        a = analytic.moments(t, cfg.label, cfg.family)
        b = oracle.quadrature_moments(analytic.cs_field(cfg.label, cfg.family, t, cfg.oracle_grid))
        dev = max(dev, *(abs(getattr(a, k) - getattr(b, k)) for k in analytic.Moments.__dataclass_fields__))
    return _result("moments", dev)


def _random_z(rng, n, radius=2.0):
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    th = rng.uniform(0.0, 2.0 * math.pi, n)
    return r * np.exp(1j * th)


def check_overlap(cfg, rng):
    z1s, z2s = _random_z(rng, 5), _random_z(rng, 5)
    dev = 0.0
    for z1, z2 in zip(z1s, z2s):
        exact = analytic.overlap(z1, z2)
        for t in (0.0, 1.0):
            quad = oracle.overlap_quadrature(z1, z2, t, cfg.family, cfg.oracle_grid)
            dev = max(dev, abs(quad - exact))
    return _result("overlap", dev, n_pairs=len(z1s))


def glauber_errors(label, fam, tau, q, n_trunc):
    """(max modulus error, std of the relative phase) of the truncated series."""
    closed = analytic.eval_generalized_cs(q, tau, label, fam)
    series = analytic.glauber_sum(label, q, tau, fam, n_trunc)
    mod_err = float(np.max(np.abs(np.abs(series) - np.abs(closed))))
    mask = np.abs(closed) > 1e-6 * np.max(np.abs(closed))
    rel = series[mask] / closed[mask]
    phase = np.angle(rel * np.conj(rel[np.argmax(np.abs(closed[mask]))]))
    return mod_err, float(np.std(phase))


def glauber_truncation(z, tail=GLAUBER_TAIL, n_max=analytic.N_MAX):
    n = 0
    while analytic.glauber_tail_bound(z, n) > tail and n < n_max:
        n += 1
    return n


def check_glauber(cfg, rng):
    n = max(40, glauber_truncation(cfg.label.z))
    q = np.linspace(-10.0, 10.0, 801)
    mod_err, phase_std = 0.0, 0.0
    for t in cfg.taus:
        m, s = glauber_errors(cfg.label, cfg.family, t, q, n)
        mod_err, phase_std = max(mod_err, m), max(phase_std, s)
    return _result("glauber", max(mod_err, phase_std), n_trunc=n, modulus_error=mod_err, phase_std=phase_std)


def fock_gram(fam, tau, grid, n=6):
    q = grid.points
    states = np.array(list(analytic.fock_ladder(n, q, tau, fam)))
    return states.conj() @ states.T * grid.spacing


def check_fock(cfg, rng):
    dev = 0.0
    for t in cfg.taus:
        gram = fock_gram(cfg.family, t, cfg.oracle_grid)
        dev = max(dev, float(np.max(np.abs(gram - np.eye(gram.shape[0])))))
    return _result("fock", dev, n_max=6)


def check_completeness(cfg, rng):
    t = cfg.taus[0]
    dev = oracle.completeness_check(0.0, 0.0, t, cfg.family)
    return _result("completeness", dev, tau=t)


CHECKS = {
    "delta": check_delta,
    "rs_product": check_rs_product,
    "heisenberg": check_heisenberg,
    "residual": check_residual,
    "propagate": check_propagate,
    "norm": check_norm,
    "moments": check_moments,
    "overlap": check_overlap,
    "glauber": check_glauber,
    "fock": check_fock,
    "completeness": check_completeness,
}


def run_checks(cfg, names):
    rng = np.random.default_rng(cfg.seed)
    # every check draws from its own child stream so selecting a subset
    # does not change the numbers of the others
    streams = dict(zip(CHECKS, rng.spawn(len(CHECKS))))
    return [CHECKS[name](cfg, streams[name]) for name in names]


__all__ = ["run_checks", "CHECKS", "TOL"]
