"""Uniform 1D grids, sampled wavefunctions and their CSV/JSON serialisation."""

import io
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError


@dataclass(frozen=True)
class Grid:
    """Uniform grid on [q_min, q_max].

    With ``endpoint=False`` (the default) the grid is periodic: spacing is
    (q_max - q_min) / n_points and q_max itself is not a node.  This is the
    layout the FFT-based oracles need.  ``endpoint=True`` includes q_max, as
    in the CLI's ``min:max:count`` syntax.
    """

    q_min: float
    q_max: float
    n_points: int
    endpoint: bool = False

    def __post_init__(self):
        if not (np.isfinite(self.q_min) and np.isfinite(self.q_max)):
            raise InvalidInputError("grid bounds must be finite")
        if not self.q_max > self.q_min:
            raise InvalidInputError(f"need q_max > q_min, got [{self.q_min}, {self.q_max}]")
        if int(self.n_points) != self.n_points or self.n_points < 2:
            raise InvalidInputError(f"n_points must be an integer >= 2, got {self.n_points}")

    @property
    def length(self):
        return self.q_max - self.q_min

    @property
    def spacing(self):
        return self.length / (self.n_points - 1 if self.endpoint else self.n_points)

    @property
    def points(self):
        return self.q_min + self.spacing * np.arange(self.n_points)

    @property
    def is_spectral(self):
        n = self.n_points
        return not self.endpoint and n >= 16 and n & (n - 1) == 0

    def to_json(self):
        return {
            "q_min": self.q_min,
            "q_max": self.q_max,
            "n_points": self.n_points,
            "endpoint": self.endpoint,
        }

    @classmethod
    def parse(cls, spec, endpoint=True):
        """Parse ``"min:max:count"``."""
        try:
            lo, hi, n = spec.split(":")
            return cls(float(lo), float(hi), int(n), endpoint=endpoint)
        except ValueError as exc:
            if isinstance(exc, InvalidInputError):
                raise
            raise InvalidInputError(f"grid spec must be 'min:max:count', got {spec!r}") from None


REFERENCE_GRID = Grid(-40.0, 40.0, 4096)


@dataclass(frozen=True, eq=False)
class WaveField:
    """Samples of psi(q, tau) on a grid at a single time."""

    grid: Grid
    values: np.ndarray
    tau: float
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=complex)
        if v.shape != (self.grid.n_points,):
            raise InvalidInputError(
                f"values has shape {v.shape}, grid expects ({self.grid.n_points},)"
            )
        if not np.all(np.isfinite(v)):
            raise InvalidInputError("field values must be finite")
        object.__setattr__(self, "values", v)

    @property
    def q(self):
        return self.grid.points

    @property
    def density(self):
        return np.abs(self.values) ** 2


def fmt(x):
    """Shortest-unambiguous-at-17-digits float text, locale independent."""
    return "%.17g" % x


def field_rows(q, values, density):
    for qi, vi, di in zip(q, values, density):
        yield (fmt(qi), fmt(vi.real), fmt(vi.imag), fmt(di))


def write_field_csv(fh, q, values, density, tau=None):
    """Write ``q,re,im,density`` rows; prefix a ``tau`` column when tau is given."""
    if tau is None:
        fh.write("q,re,im,density\n")
        for row in field_rows(q, values, density):
            fh.write(",".join(row) + "\n")
    else:
        for row in field_rows(q, values, density):
            fh.write(fmt(tau) + "," + ",".join(row) + "\n")


def field_to_csv(wf, density=None):
    buf = io.StringIO()
    write_field_csv(buf, wf.q, wf.values, wf.density if density is None else density)
    return buf.getvalue()


def read_field_csv(text):
    """Parse ``q,re,im,density`` text into (q, values, density) arrays."""
    lines = text.strip().splitlines()
    if lines[0].strip() != "q,re,im,density":
        raise InvalidInputError(f"unexpected header {lines[0]!r}")
    data = np.array([[float(c) for c in ln.split(",")] for ln in lines[1:]])
    return data[:, 0], data[:, 1] + 1j * data[:, 2], data[:, 3]


def sidecar_json(tau, family, z, grid):
    return json.dumps(
        {"tau": tau, "family": family.to_json(), "z": [z.real, z.imag], "grid": grid.to_json()},
        indent=2,
        sort_keys=True,
    ) + "\n"
