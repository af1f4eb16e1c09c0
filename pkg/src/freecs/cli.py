"""Command-line front end.

Exit codes: 0 success, 1 config error, 2 I/O error, 3 verification failure.
All numbers are written with 17 significant digits so output is byte-stable
and round-trips doubles.
"""

import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import click
import numpy as np

from . import analytic, oracle
from .errors import ConstraintViolationError, InvalidInputError
from .families import CSLabel, family_from_json, make_cs_family, z_from_initial
from .fields import REFERENCE_GRID, Grid, fmt, sidecar_json, write_field_csv
from .semiclassical import DimensionalPacket, classify
from .units import ELECTRON_MASS_KG, HBAR_JS, UnitSystem

EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_VERIFY = 3

DEFAULT_SIGMA_Q = 2**-0.5
DEFAULT_FIELD_GRID = "-10:10:2001"
ALL_CHECKS = (
    "delta",
    "rs_product",
    "heisenberg",
    "residual",
    "propagate",
    "norm",
    "moments",
    "overlap",
    "glauber",
    "fock",
    "completeness",
)


class ConfigError(click.ClickException):
    exit_code = EXIT_CONFIG


class OutputError(click.ClickException):
    exit_code = EXIT_IO


class VerificationFailed(click.ClickException):
    exit_code = EXIT_VERIFY


@dataclass
class RunConfig:
    """Merged JSON-file and command-line settings for one invocation."""

    family: object
    label: CSLabel
    taus: list
    grid: Grid
    oracle_grid: Grid
    units: UnitSystem = None
    out: str = None
    seed: int = 0
    options: dict = field(default_factory=dict)


def parse_complex(text):
    """'re,im' or [re, im] -> complex."""
    if isinstance(text, (list, tuple)):
        parts = text
    else:
        parts = str(text).split(",")
    if len(parts) != 2:
        raise InvalidInputError(f"expected 're,im', got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def parse_taus(spec):
    """'0,0.5,1' or 'start:stop:count' (inclusive) or a JSON list."""
    if isinstance(spec, (int, float)):
        return [float(spec)]
    if isinstance(spec, (list, tuple)):
        return [float(t) for t in spec]
    spec = str(spec)
    try:
        if ":" in spec:
            lo, hi, n = spec.split(":")
            return [float(t) for t in np.linspace(float(lo), float(hi), int(n))]
        return [float(t) for t in spec.split(",") if t.strip()]
    except ValueError:
        raise InvalidInputError(f"cannot parse tau list {spec!r}") from None


def _grid(spec, endpoint):
    if spec is None:
        return None
    if isinstance(spec, dict):
        return Grid(
            float(spec["q_min"]),
            float(spec["q_max"]),
            int(spec["n_points"]),
            endpoint=spec.get("endpoint", endpoint),
        )
    return Grid.parse(spec, endpoint=endpoint)


def _label(d, fam):
    z = d.get("z")
    q0, p = d.get("q0"), d.get("p")
    if z is not None:
        z = parse_complex(z)
    if q0 is None and p is None:
        return CSLabel(0j if z is None else z)
    from_qp = z_from_initial(float(q0 or 0.0), float(p or 0.0), fam)
    if z is not None and abs(z - from_qp.z) > 1e-12 * max(1.0, abs(z)):
        raise InvalidInputError(
            f"label given as z = {z} and as (q0, p) = ({q0}, {p}) -> z = {from_qp.z}; they disagree"
        )
    return from_qp


def build_config(file_cfg, flags):
    """Flags (non-None values) override keys of the JSON config."""
    d = dict(file_cfg)
    label_d = dict(d.pop("label", {}) or {})
    for k in ("z", "q0", "p"):
        if k in d:
            label_d[k] = d.pop(k)
    fam_d = dict(d.pop("family", {}) or {})

    if flags.get("sigma_q") is not None:
        fam_d = {"sigma_q": flags.pop("sigma_q")}
    elif flags.get("c1") is not None or flags.get("c2") is not None:
        if flags.get("c1") is None or flags.get("c2") is None:
            raise InvalidInputError("--c1 and --c2 must be given together")
        fam_d = {"c1": parse_complex(flags.pop("c1")), "c2": parse_complex(flags.pop("c2"))}
        fam_d = {k: [v.real, v.imag] for k, v in fam_d.items()}
    for k in ("sigma_q", "c1", "c2"):
        flags.pop(k, None)
    fam = family_from_json(fam_d) if fam_d else make_cs_family(DEFAULT_SIGMA_Q)

    fz, fq0, fp = flags.pop("z", None), flags.pop("q0", None), flags.pop("p", None)
    if fz is not None and fq0 is None and fp is None:
        label_d = {"z": fz}
    elif fz is None and (fq0 is not None or fp is not None):
        label_d.pop("z", None)
    elif fz is not None:
        label_d["z"] = fz
    if fq0 is not None:
        label_d["q0"] = fq0
    if fp is not None:
        label_d["p"] = fp
    label = _label(label_d, fam)

    for k, v in flags.items():
        if v is not None and v != ():
            d[k] = v

    units = d.pop("units", None)
    if units is not None and not isinstance(units, UnitSystem):
        units = UnitSystem.from_json(units)
    taus = parse_taus(d.pop("tau", 0.0))
    grid = _grid(d.pop("grid", DEFAULT_FIELD_GRID), endpoint=True)
    ogrid = _grid(d.pop("oracle_grid", None), endpoint=False) or REFERENCE_GRID
    out = d.pop("out", None)
    seed = int(d.pop("seed", 0) or 0)
    return RunConfig(fam, label, taus, grid, ogrid, units, out, seed, d)


def _load_config(ctx, local):
    """Merge group-level globals, the JSON file and subcommand flags."""
    g = ctx.obj or {}
    flags = {k: v for k, v in local.items()}
    for k in ("config", "out", "seed"):
        if flags.get(k) is None:
            flags[k] = g.get(k)
    path = flags.pop("config", None)
    file_cfg = {}
    if path is not None:
        try:
            file_cfg = json.loads(Path(path).read_text())
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    try:
        return build_config(file_cfg, flags)
    except (InvalidInputError, ConstraintViolationError, KeyError, TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None


def _emit(text, out):
    if out is None:
        click.echo(text, nl=False)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise OutputError(f"cannot write {out}: {exc}") from None


def global_options(f):
    f = click.option("--config", "config", type=click.Path(dir_okay=False), help="JSON config file.")(f)
    f = click.option("--out", help="Output path (default: stdout).")(f)
    f = click.option("--seed", type=int, help="Seed for randomized checks.")(f)
    return f


def state_options(f):
    f = click.option("--sigma-q", type=float, help="CS family by initial spread sigma_q.")(f)
    f = click.option("--c1", help="Raw family constant c1 as 're,im' (needs --c2).")(f)
    f = click.option("--c2", help="Raw family constant c2 as 're,im' (needs --c1).")(f)
    f = click.option("--z", help="Quantum number z as 're,im'.")(f)
    f = click.option("--q0", type=float, help="Initial mean coordinate.")(f)
    f = click.option("--p", type=float, help="Mean momentum.")(f)
    f = click.option("--tau", help="Times: 'a,b,c' or 'start:stop:count'.")(f)
    return f


@click.group()
@global_options
@click.pass_context
def main(ctx, config, out, seed):
    """Free-particle coherent states: fields, moments, checks, semiclassicality."""
    ctx.obj = {"config": config, "out": out, "seed": seed}


@main.command("field")
@global_options
@state_options
@click.option("--grid", help="Grid as 'min:max:count' (endpoints included).")
@click.option("--layout", type=click.Choice(["long", "split"]), help="One long file with a tau column, or one file per tau.")
@click.pass_context
def cmd_field(ctx, **kw):
    """Write psi(q, tau) and its density as CSV."""
    cfg = _load_config(ctx, kw)
    layout = cfg.options.get("layout") or "long"
    q = cfg.grid.points

    def sample(tau):
        try:
            values = analytic.cs_field(cfg.label, cfg.family, tau, cfg.grid).values
        except (InvalidInputError, ValueError) as exc:
            raise ConfigError(str(exc)) from None
        return values, analytic.density(q, tau, cfg.label, cfg.family)

    if layout == "long":
        buf = io.StringIO()
        buf.write("tau,q,re,im,density\n")
        for tau in cfg.taus:
            values, rho = sample(tau)
            write_field_csv(buf, q, values, rho, tau=tau)
        _emit(buf.getvalue(), cfg.out)
        if cfg.out is not None:
            _emit(sidecar_json(cfg.taus, cfg.family, cfg.label.z, cfg.grid), cfg.out + ".json")
        return

    if cfg.out is None:
        raise ConfigError("--layout split needs --out")

    base = Path(cfg.out)
    for i, tau in enumerate(cfg.taus):
        values, rho = sample(tau)
        buf = io.StringIO()
        write_field_csv(buf, q, values, rho)
        path = split_path(base, i)
        _emit(buf.getvalue(), str(path))
        _emit(sidecar_json(tau, cfg.family, cfg.label.z, cfg.grid), str(path) + ".json")


def split_path(base, i):
    return base.with_name(f"{base.stem}_{i:03d}{base.suffix or '.csv'}")


MOMENT_COLUMNS = ("mean_q", "mean_p", "sigma_q", "sigma_p", "sigma_qp")


@main.command("moments")
@global_options
@state_options
@click.option("--with-oracle", is_flag=True, default=None, help="Add quadrature columns.")
@click.pass_context
def cmd_moments(ctx, **kw):
    """Tabulate analytic moments and uncertainty products per tau."""
    cfg = _load_config(ctx, kw)
    with_oracle = bool(cfg.options.get("with_oracle"))
    header = ["tau", *MOMENT_COLUMNS, "rs_product", "heisenberg"]
    if with_oracle:
        header += [f"quad_{c}" for c in MOMENT_COLUMNS]
    lines = [",".join(header)]
    for tau in cfg.taus:
        m = analytic.moments(tau, cfg.label, cfg.family)
        row = [tau, *(getattr(m, c) for c in MOMENT_COLUMNS)]
        row += [analytic.rs_product(tau, cfg.family), analytic.heisenberg_product(tau, cfg.family)]
        if with_oracle:
            try:
                mq = oracle.quadrature_moments(analytic.cs_field(cfg.label, cfg.family, tau, cfg.oracle_grid))
            except (InvalidInputError, RuntimeError) as exc:
                raise ConfigError(str(exc)) from None
            row += [getattr(mq, c) for c in MOMENT_COLUMNS]
        lines.append(",".join(fmt(v) for v in row))
    _emit("\n".join(lines) + "\n", cfg.out)


@main.command("classify")
@global_options
@click.option("--mass-kg", type=float, help=f"Particle mass (default electron, {ELECTRON_MASS_KG}).")
@click.option("--hbar-Js", "hbar_js", type=float, help=f"Reduced Planck constant (default {HBAR_JS}).")
@click.option("--velocity-ms", type=float, help="Mean velocity [m/s].")
@click.option("--sigma-x-m", type=float, help="Initial coordinate spread [m].")
@click.pass_context
def cmd_classify(ctx, **kw):
    """Semiclassicality report for a dimensional packet, as JSON."""
    cfg = _load_config(ctx, kw)
    o = cfg.options
    try:
        u = cfg.units
        mass = o.get("mass_kg") or (u.mass if u else ELECTRON_MASS_KG)
        hbar = o.get("hbar_js") or (u.hbar if u else HBAR_JS)
        if o.get("velocity_ms") is None or o.get("sigma_x_m") is None:
            raise InvalidInputError("classify needs --velocity-ms and --sigma-x-m")
        sigma_x = float(o["sigma_x_m"])
        # the length scale drops out of the criterion; any positive value works
        units = UnitSystem(length_scale=u.length_scale if u else abs(sigma_x) or 1.0, mass=mass, hbar=hbar)
        packet = DimensionalPacket.from_velocity(float(o["velocity_ms"]), sigma_x, units)
        report = classify(packet)
    except InvalidInputError as exc:
        raise ConfigError(str(exc)) from None
    doc = {
        "input": {"mass_kg": mass, "hbar_Js": hbar, "velocity_ms": o["velocity_ms"], "sigma_x_m": sigma_x},
        "report": report.to_json(),
    }
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", cfg.out)


@main.command("completeness")
@global_options
@state_options
@click.option("--q", "q_eval", type=float, help="Evaluation point q (default 0).")
@click.option("--q-prime", type=float, help="Centre of the Gaussian test function (default 0).")
@click.option("--test-width", type=float, help="Width of the test function (default 1).")
@click.option("--radius", type=float, help="Disk radius in the z-plane (default: automatic).")
@click.option("--n-radial", type=int, help="Radial quadrature nodes (default 8 * radius).")
@click.pass_context
def cmd_completeness(ctx, **kw):
    """Smeared resolution-of-identity deviation per tau, as JSON."""
    cfg = _load_config(ctx, kw)
    o = cfg.options
    rows = []
    for tau in cfg.taus:
        try:
            dev = oracle.completeness_check(
                float(o.get("q_eval") or 0.0),
                float(o.get("q_prime") or 0.0),
                tau,
                cfg.family,
                test_width=float(o.get("test_width") or 1.0),
                radius=o.get("radius"),
                n_radial=o.get("n_radial"),
            )
        except (InvalidInputError, RuntimeError) as exc:
            raise ConfigError(str(exc)) from None
        rows.append({"tau": tau, "deviation": dev, "tolerance": 1e-6, "passed": dev < 1e-6})
    _emit(json.dumps({"family": cfg.family.to_json(), "results": rows}, indent=2, sort_keys=True) + "\n", cfg.out)


@main.command("verify")
@global_options
@state_options
@click.option("--check", "checks", multiple=True, help=f"Run only these checks (repeatable or comma list): {', '.join(ALL_CHECKS)}.")
@click.option("--tau0", type=float, help="Start time for the propagation check (default 0).")
@click.option("--tau1", type=float, help="End time for the propagation check (default 1).")
@click.option("--oracle-grid", help="Periodic reference grid 'min:max:count' (default -40:40:4096).")
@click.pass_context
def cmd_verify(ctx, **kw):
    """Run the invariant suite; JSON report, exit 3 if any check fails."""
    cfg = _load_config(ctx, kw)
    names = []
    for c in cfg.options.get("checks") or ALL_CHECKS:
        names += [s.strip() for s in str(c).split(",") if s.strip()]
    unknown = sorted(set(names) - set(ALL_CHECKS))
    if unknown:
        raise ConfigError(f"unknown checks: {', '.join(unknown)}")
    from .verify import run_checks

    try:
        results = run_checks(cfg, names)
    except (InvalidInputError, RuntimeError) as exc:
        raise ConfigError(str(exc)) from None
    ok = all(r["passed"] for r in results)
    doc = {
        "all_passed": ok,
        "checks": results,
        "family": cfg.family.to_json(),
        "z": [cfg.label.z.real, cfg.label.z.imag],
        "seed": cfg.seed,
    }
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", cfg.out)
    if not ok:
        failed = ", ".join(r["name"] for r in results if not r["passed"])
        raise VerificationFailed(f"failed checks: {failed}")


if __name__ == "__main__":
    sys.exit(main())
