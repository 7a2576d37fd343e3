import csv
import io
import json
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from amoebas.errors import BadParameter, BoxTooSmall
from amoebas.measure import (
    MassOptions,
    density,
    density_2var,
    density_floor_scan,
    density_grid,
    density_info,
    total_mass,
)
from amoebas.ronkin import hessian_quadrature

LH = math.log(0.5)
coord = st.floats(min_value=-3, max_value=3)


def test_density_examples():
    assert density((-40, -40, -40)) == 0.0
    d = density((LH, LH, LH))
    ref = np.linalg.det(hessian_quadrature((LH, LH, LH)))
    assert d == pytest.approx(ref, rel=1e-6)
    assert d > 0


def test_density_on_contour_is_chamber_limit():
    info = density_info((0, 0, 0))
    assert info.contour_limit and info.value == math.inf
    edge = density_info((math.log(0.5), math.log(0.25), math.log(0.25)))
    assert edge.contour_limit and edge.value == 0.0
    # the density does grow toward the interior surface
    vals = [density((0.0, math.log(2 - math.exp(0.2) + e), 0.2)) for e in (1e-2, 1e-4, 1e-6)]
    assert vals[0] < vals[1] < vals[2]


@given(st.tuples(coord, coord, coord))
def test_density_nonnegative_and_permutation_invariant(p):
    x, y, u = p
    d = density(p)
    assert d >= 0
    assert density((y, u, x)) == pytest.approx(d, rel=1e-8, abs=1e-14)
    assert density((x, u, y)) == pytest.approx(d, rel=1e-8, abs=1e-14)


def test_density_positive_away_from_contour(rng):
    from amoebas.amoeba import membership

    hits = 0
    for p in rng.uniform(-2, 2, (400, 3)):
        lab = membership(p)
        if lab.is_chamber and lab.contour_distance > 0.1:
            assert density(p) > 1e-12
            hits += 1
    assert hits > 10


@given(st.floats(min_value=-3, max_value=3), st.floats(min_value=-3, max_value=3))
def test_2var_density_is_constant(x, y):
    v = sorted([1, math.exp(x), math.exp(y)])
    if v[2] < (v[0] + v[1]) * (1 - 1e-4):
        assert density_2var((x, y)) == pytest.approx(1 / math.pi**2, rel=1e-7)
    elif v[2] > v[0] + v[1]:
        assert density_2var((x, y)) == 0.0


def test_small_grid():
    g = density_grid([(-1, 1)] * 3, 2)
    assert len(g.density) == 8 and len(g.labels) == 8
    assert np.all(g.density >= 0)
    assert all(lab != "" for lab in g.labels)


def test_grid_outside_cells_are_zero():
    g = density_grid([(-6, 1)] * 3, 6)
    out = g.codes == -1
    assert out.any() and (~out).any()
    assert np.all(g.density[out] == 0.0)


def test_grid_permutation_symmetry():
    g = density_grid([(-1.3, 1.1)] * 3, 7)
    d = g.density.reshape(7, 7, 7)
    finite = np.isfinite(d)
    for axes in [(1, 0, 2), (2, 1, 0), (0, 2, 1)]:
        dt = np.transpose(d, axes)
        assert_allclose(np.where(finite, d, 0), np.where(finite, dt, 0), rtol=1e-8, atol=1e-14)


def test_grid_serialization():
    g = density_grid([(-1, 1)] * 3, 3)
    rows = list(csv.reader(io.StringIO(g.to_csv())))
    assert rows[0] == ["x", "y", "u", "density", "chamber"]
    assert len(rows) == 28
    # 17 significant digits round-trip exactly
    assert [float(r[3]) if r[3] != "inf" else math.inf for r in rows[1:]] == list(g.density)
    doc = json.loads(g.to_json())
    assert set(doc) == {"metadata", "axes", "values"}
    assert len(doc["values"]) == 27
    assert json.dumps(json.loads(g.to_json()), indent=1) == g.to_json()
    centre = doc["values"][13]
    assert centre["chamber"] == "contour" and centre["density"] is None


def test_grid_rejects_bad_input():
    with pytest.raises(BadParameter):
        density_grid([(-1, 1)] * 3, 1)
    with pytest.raises(BadParameter):
        density_grid([(1, -1)] * 3, 3)


def test_floor_scan():
    s2 = density_floor_scan([(-2, 2)] * 2, 41, vars=2)
    assert s2["min"] == pytest.approx(1 / math.pi**2, rel=1e-6)
    assert s2["max"] == pytest.approx(1 / math.pi**2, rel=1e-6)
    s3 = density_floor_scan([(-2, 2)] * 3, 11)
    assert s3["count"] > 0 and s3["min"] > 0
    assert density_floor_scan([(-9, -8)] * 3, 3) == {"count": 0}


def test_2var_mass():
    r = total_mass([(-8, 8)] * 2)
    assert r.mass == pytest.approx(0.5, rel=1e-2)
    assert r.coverage_estimate >= 0.99


def test_mass_monotone_and_bounded():
    opts = MassOptions(cell=0.5, min_coverage=0.0)
    small = total_mass([(-2, 2)] * 3, opts)
    large = total_mass([(-3, 3)] * 3, opts)
    assert small.mass <= large.mass + 1e-10
    assert large.mass <= large.newton_volume * 1.02


def test_mass_box_too_small():
    with pytest.raises(BoxTooSmall):
        total_mass([(-1, 1)] * 3, MassOptions(cell=0.5))


def test_mass_is_thread_count_independent(monkeypatch):
    opts = MassOptions(cell=0.5, min_coverage=0.0, chunk=256)
    monkeypatch.setenv("RONKIN_THREADS", "1")
    a = total_mass([(-2, 2)] * 3, opts)
    monkeypatch.setenv("RONKIN_THREADS", "4")
    b = total_mass([(-2, 2)] * 3, opts)
    assert a.mass == b.mass and a.coverage_estimate == b.coverage_estimate
