"""Dimensional CS packets, their spreading, and the semiclassicality test.

A packet is semiclassical when its spreading over time t stays small next to
the distance travelled, hbar t / (2 m sigma_x) << p_x t / m.  That is
t-independent and equivalent to lambda << 4 pi sigma_x with
lambda = 2 pi hbar / p_x (the de Broglie wavelength), i.e. to

    ratio = lambda / (4 pi sigma_x) = hbar / (2 p_x sigma_x) << 1.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .units import UnitSystem

SEMICLASSICAL_MAX_RATIO = 0.1
QUANTUM_MIN_RATIO = 10.0


class Verdict(str, enum.Enum):
    SEMICLASSICAL = "semiclassical"
    MARGINAL = "marginal"
    QUANTUM = "quantum"


@dataclass(frozen=True)
class DimensionalPacket:
    """Free-particle CS in SI units: start x0 [m], momentum p_x [kg m/s], width sigma_x [m]."""

    x0: float
    p_x: float
    sigma_x: float
    units: UnitSystem

    def __post_init__(self):
        for name in ("x0", "p_x", "sigma_x"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidInputError(f"{name} must be finite")
        if not self.sigma_x > 0:
            raise InvalidInputError(f"sigma_x must be > 0, got {self.sigma_x!r}")

    @property
    def velocity(self):
        return self.p_x / self.units.mass

    def x_of_t(self, t):
        return self.x0 + self.velocity * t

    @classmethod
    def from_velocity(cls, velocity, sigma_x, units, x0=0.0):
        return cls(x0, units.mass * velocity, sigma_x, units)


@dataclass(frozen=True)
class SemiclassicalityReport:
    wavelength: float
    bound: float
    ratio: float
    verdict: Verdict

    def to_json(self):
        def num(v):
            return v if math.isfinite(v) else "inf"

        return {
            "wavelength_m": num(self.wavelength),
            "bound_m": self.bound,
            "ratio": num(self.ratio),
            "verdict": self.verdict.value,
        }


def sigma_x_of_t(packet, t):
    """sqrt(sigma_x**2 + hbar**2 t**2 / (4 m**2 sigma_x**2))."""
    u = packet.units
    s = packet.sigma_x
    spread = u.hbar * t / (2.0 * u.mass * s)
    return np.sqrt(s * s + spread * spread)


def eval_dimensional(packet, x, t):
    """(Psi(x, t) [m^-1/2], rho(x, t) [m^-1]) for the packet."""
    u = packet.units
    s = packet.sigma_x
    x = np.asarray(x, dtype=float)
    dx = x - packet.x_of_t(t)
    a = u.hbar * t / (2.0 * u.mass * s)
    phase = (packet.p_x * x - packet.p_x**2 * t / (2.0 * u.mass)) / u.hbar
    psi = np.exp(1j * phase - dx * dx / (4.0 * (s * s + 0.5j * u.hbar * t / u.mass))) / np.sqrt(
        (s + 1j * a) * math.sqrt(2.0 * math.pi)
    )
    var = s * s + a * a
    rho = np.exp(-0.5 * dx * dx / var) / np.sqrt(2.0 * math.pi * var)
    return psi, rho


def spreading_to_travel_ratio_sq(packet, t):
    """(spreading term) / (distance travelled)**2 at time t; t-independent."""
    u = packet.units
    spread_sq = (u.hbar * t) ** 2 / (4.0 * u.mass**2 * packet.sigma_x**2)
    travel_sq = (packet.p_x * t / u.mass) ** 2
    return spread_sq / travel_sq


def classify(packet):
    """Compare lambda = 2 pi hbar / |p_x| against 4 pi sigma_x.

    The ratio is banded: <= 0.1 semiclassical, > 10 quantum, marginal in
    between.  p_x = 0 never satisfies the criterion and reports ratio = inf.
    """
    s = packet.sigma_x
    if not (math.isfinite(s) and s > 0):
        raise InvalidInputError(f"sigma_x must be > 0, got {s!r}")
    bound = 4.0 * math.pi * s
    pabs = abs(packet.p_x)
    if pabs == 0:
        return SemiclassicalityReport(math.inf, bound, math.inf, Verdict.QUANTUM)
    wavelength = 2.0 * math.pi * packet.units.hbar / pabs
    ratio = wavelength / bound
    if ratio <= SEMICLASSICAL_MAX_RATIO:
        verdict = Verdict.SEMICLASSICAL
    elif ratio > QUANTUM_MIN_RATIO:
        verdict = Verdict.QUANTUM
    else:
        verdict = Verdict.MARGINAL
    return SemiclassicalityReport(wavelength, bound, ratio, verdict)
