"""Conversion between SI variables (x, t, p_x) and reduced variables (q, tau, p).

With a free length scale l the reduction is

    q = x / l,   tau = hbar t / (m l**2),   p = l p_x / hbar,

and wavefunctions transform as psi(q, tau) = sqrt(l) Psi(l q, m l**2 tau / hbar),
which keeps |Psi|**2 dx = |psi|**2 dq.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

ELECTRON_MASS_KG = 9.10938e-31
HBAR_JS = 1.05457e-34


def _check_finite(**values):
    for name, v in values.items():
        if not np.all(np.isfinite(v)):
            raise InvalidInputError(f"{name} must be finite, got {v!r}")


@dataclass(frozen=True)
class UnitSystem:
    """Mass [kg], reduced Planck constant [J s] and length scale l [m]."""

    length_scale: float
    mass: float = ELECTRON_MASS_KG
    hbar: float = HBAR_JS

    def __post_init__(self):
        for name in ("mass", "hbar", "length_scale"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise InvalidInputError(f"{name} must be finite and > 0, got {v!r}")

    @property
    def time_scale(self):
        """Seconds per unit of tau."""
        return self.mass * self.length_scale**2 / self.hbar

    @property
    def momentum_scale(self):
        """kg m/s per unit of p."""
        return self.hbar / self.length_scale

    def to_json(self):
        return {"mass_kg": self.mass, "hbar_Js": self.hbar, "length_m": self.length_scale}

    @classmethod
    def from_json(cls, d):
        try:
            length = float(d["length_m"])
        except KeyError:
            raise InvalidInputError("units: 'length_m' is required") from None
        return cls(
            length_scale=length,
            mass=float(d.get("mass_kg", ELECTRON_MASS_KG)),
            hbar=float(d.get("hbar_Js", HBAR_JS)),
        )


def to_dimensionless(x, t, p_x, u):
    """(x [m], t [s], p_x [kg m/s]) -> (q, tau, p)."""
    _check_finite(x=x, t=t, p_x=p_x)
    return x / u.length_scale, t / u.time_scale, p_x / u.momentum_scale


def to_dimensional(q, tau, p, u):
    """(q, tau, p) -> (x [m], t [s], p_x [kg m/s]); inverse of to_dimensionless."""
    _check_finite(q=q, tau=tau, p=p)
    return q * u.length_scale, tau * u.time_scale, p * u.momentum_scale


def wavefunction_to_dimensional(psi, u):
    """Reduced amplitude psi [1] -> Psi [m**-1/2]."""
    return np.asarray(psi) / math.sqrt(u.length_scale)


def wavefunction_to_dimensionless(Psi, u):
    return np.asarray(Psi) * math.sqrt(u.length_scale)
