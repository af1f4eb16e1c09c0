"""CS families built from the linear integral of motion A(tau) = c1 q + i g(tau) p.

Commuting A with the equation operator i d/dtau - p**2/2 forces c1 to be
constant and g(tau) = c2 + i c1 tau.  Normalising [A, A^dagger] = 1 gives the
constraint 2 Re(conj(c1) c2) = 1, which every family here satisfies.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstraintViolationError, InvalidInputError

DELTA_TOL = 1e-12


@dataclass(frozen=True)
class GeneralizedFamily:
    """Two complex constants (c1, c2) with 2 Re(conj(c1) c2) = 1.

    Families with arg c1 != arg c2 are squeezed: they saturate the
    Robertson-Schroedinger bound but not the Heisenberg one at tau = 0.
    """

    c1: complex
    c2: complex

    def __post_init__(self):
        c1, c2 = complex(self.c1), complex(self.c2)
        if not (cmath.isfinite(c1) and cmath.isfinite(c2)):
            raise InvalidInputError("c1 and c2 must be finite")
        if c1 == 0 or c2 == 0:
            raise InvalidInputError("c1 and c2 must be nonzero")
        delta = 2.0 * (c1.conjugate() * c2).real
        if abs(delta - 1.0) > DELTA_TOL:
            raise ConstraintViolationError(delta, DELTA_TOL)
        object.__setattr__(self, "c1", c1)
        object.__setattr__(self, "c2", c2)

    @property
    def delta(self):
        return 2.0 * (self.c1.conjugate() * self.c2).real

    @property
    def mu1(self):
        return cmath.phase(self.c1)

    @property
    def mu2(self):
        return cmath.phase(self.c2)

    @property
    def generalized(self):
        return self

    def to_json(self):
        return {"c1": [self.c1.real, self.c1.imag], "c2": [self.c2.real, self.c2.imag]}


@dataclass(frozen=True)
class CSFamily:
    """Free-particle CS with initial coordinate spread sigma_q (mu1 = mu2 = 0)."""

    sigma_q: float

    def __post_init__(self):
        s = self.sigma_q
        if not (isinstance(s, (int, float)) and math.isfinite(s) and s > 0):
            raise InvalidInputError(f"sigma_q must be finite and > 0, got {s!r}")
        object.__setattr__(self, "sigma_q", float(s))

    @property
    def sigma_p(self):
        return 0.5 / self.sigma_q

    @property
    def c1(self):
        return complex(0.5 / self.sigma_q)

    @property
    def c2(self):
        return complex(self.sigma_q)

    @property
    def generalized(self):
        return GeneralizedFamily(self.c1, self.c2)

    def to_json(self):
        return {"sigma_q": self.sigma_q}


@dataclass(frozen=True)
class CSLabel:
    """Complex quantum number z, the eigenvalue of A(tau)."""

    z: complex

    def __post_init__(self):
        z = complex(self.z)
        if not cmath.isfinite(z):
            raise InvalidInputError(f"z must be finite, got {self.z!r}")
        object.__setattr__(self, "z", z)

    def initial(self, fam):
        """Trajectory initial data (q0, p) of this label within `fam`."""
        return initial_from_z(self, fam)

    def to_json(self):
        return {"z": [self.z.real, self.z.imag]}


def make_generalized(c1, c2):
    return GeneralizedFamily(complex(c1), complex(c2))


def make_cs_family(sigma_q):
    return CSFamily(sigma_q)


def family_from_json(d):
    """Parse ``{"sigma_q": s}`` or ``{"c1": [re, im], "c2": [re, im]}``."""
    if "sigma_q" in d:
        if "c1" in d or "c2" in d:
            raise InvalidInputError("family: give either sigma_q or (c1, c2), not both")
        return make_cs_family(float(d["sigma_q"]))
    if "c1" in d and "c2" in d:
        return make_generalized(complex(*d["c1"]), complex(*d["c2"]))
    raise InvalidInputError("family: expected 'sigma_q' or both 'c1' and 'c2'")


def g_of_tau(fam, tau):
    """g(tau) = c2 + i c1 tau; broadcasts over array tau."""
    if np.ndim(tau):
        tau = np.asarray(tau, dtype=float)
    return fam.c2 + 1j * fam.c1 * tau


def z_from_initial(q0, p, fam):
    """z = c1 q0 + i c2 p."""
    return CSLabel(fam.c1 * q0 + 1j * fam.c2 * p)


def initial_from_z(label, fam):
    """Inverse of z_from_initial: q0 = 2 Re(conj(c2) z), p = 2 Im(conj(c1) z).

    For a CSFamily these reduce to q0 = 2 sigma_q Re z and p = Im z / sigma_q.
    """
    z = as_z(label)
    if isinstance(fam, CSFamily):
        return 2.0 * fam.sigma_q * z.real, z.imag / fam.sigma_q
    return 2.0 * (fam.c2.conjugate() * z).real, 2.0 * (fam.c1.conjugate() * z).imag


def as_z(label):
    """CSLabel, complex or array of complex -> z (arrays pass through)."""
    if isinstance(label, CSLabel):
        return label.z
    if np.ndim(label):
        return np.asarray(label, dtype=complex)
    return complex(label)
