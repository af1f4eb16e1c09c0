"""Coherent states of a free nonrelativistic particle."""

from .analytic import (
    Moments,
    cs_field,
    density,
    eval_cs,
    eval_generalized_cs,
    fock_state,
    glauber_sum,
    heisenberg_product,
    moments,
    overlap,
    plane_wave,
    rs_product,
)
from .families import (
    CSFamily,
    CSLabel,
    GeneralizedFamily,
    g_of_tau,
    initial_from_z,
    make_cs_family,
    make_generalized,
    z_from_initial,
)
from .fields import REFERENCE_GRID, Grid, WaveField
from .units import UnitSystem, to_dimensional, to_dimensionless

__version__ = "0.1.0"
