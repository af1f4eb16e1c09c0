"""Exception types raised by the library."""


class InvalidInputError(ValueError):
    """A parameter is non-finite, non-positive, or otherwise out of range."""


class ConstraintViolationError(ValueError):
    """The pair (c1, c2) does not satisfy 2 Re(c1* c2) = 1."""

    def __init__(self, delta, tol):
        self.delta = delta
        self.tol = tol
        super().__init__(
            f"2 Re(conj(c1) c2) = {delta!r} differs from 1 by more than {tol:g}"
        )


class SingularFamilyError(ValueError):
    """g(tau) vanished, so the wavefunction prefactor is undefined."""


class CapacityError(ValueError):
    """A Fock index or series truncation exceeds the configured n_max."""


class GridTooCoarseError(RuntimeError):
    """Finite-difference curvature estimates disagree under step halving."""


class AliasingRiskError(RuntimeError):
    """The field carries non-negligible amplitude at the grid edges."""


class TruncationRadiusError(RuntimeError):
    """The completeness integrand has not decayed at the disk boundary."""
