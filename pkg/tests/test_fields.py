import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from freecs.errors import InvalidInputError
from freecs.families import make_cs_family
from freecs.fields import Grid, WaveField, field_to_csv, fmt, read_field_csv, sidecar_json


def test_periodic_and_endpoint_spacing():
    assert Grid(-1, 1, 4).spacing == 0.5
    assert list(Grid(-1, 1, 4).points) == [-1.0, -0.5, 0.0, 0.5]
    g = Grid.parse("-8:8:1601")
    assert g.endpoint and g.spacing == pytest.approx(0.01)
    assert g.points[-1] == pytest.approx(8.0, abs=1e-12)


def test_spectral_flag():
    assert Grid(-40, 40, 4096).is_spectral
    assert not Grid(-40, 40, 4000).is_spectral
    assert not Grid(-40, 40, 4096, endpoint=True).is_spectral


@pytest.mark.parametrize("args", [(1, 0, 10), (0, 1, 1), (0, np.inf, 10), (0, 1, 2.5)])
def test_bad_grids(args):
    with pytest.raises(InvalidInputError):
        Grid(*args)


@pytest.mark.parametrize("spec", ["1:2", "a:b:c", "0:1:3:4"])
def test_bad_grid_spec(spec):
    with pytest.raises(InvalidInputError):
        Grid.parse(spec)


def test_wavefield_validates():
    g = Grid(0, 1, 8)
    with pytest.raises(InvalidInputError):
        WaveField(g, np.zeros(7), 0.0)
    with pytest.raises(InvalidInputError):
        WaveField(g, np.full(8, np.nan), 0.0)
    f = WaveField(g, np.arange(8), 0.0)
    assert f.values.dtype == complex
    np.testing.assert_array_equal(f.density, np.arange(8) ** 2)


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_fmt_roundtrips_doubles(x):
    assert float(fmt(x)) == x


def test_csv_roundtrip():
    rng = np.random.default_rng(0)
    g = Grid(-3, 3, 32)
    f = WaveField(g, rng.normal(size=32) + 1j * rng.normal(size=32), 0.5)
    q, values, rho = read_field_csv(field_to_csv(f))
    np.testing.assert_array_equal(q, g.points)
    np.testing.assert_array_equal(values, f.values)
    np.testing.assert_array_equal(rho, f.density)


def test_bad_header():
    with pytest.raises(InvalidInputError):
        read_field_csv("x,y\n1,2\n")


def test_sidecar():
    doc = json.loads(sidecar_json(1.0, make_cs_family(2.0), 1 - 2j, Grid(0, 1, 4)))
    assert doc["z"] == [1.0, -2.0]
    assert doc["grid"]["n_points"] == 4
    assert doc["tau"] == 1.0
