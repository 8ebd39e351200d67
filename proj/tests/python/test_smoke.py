"""Smoke tests for the _psido extension module."""

import json
import math
import os
import sys

import numpy as np
import pytest

MODULE_DIR = os.environ.get("PSIDO_MODULE_DIR")
if MODULE_DIR:
    sys.path.insert(0, MODULE_DIR)

try:
    import _psido  # build-tree layout
except ImportError:
    _psido = pytest.importorskip("psido._psido")  # installed package layout


def symbol(n, terms):
    return json.dumps({"n": n, "terms": terms})


XI1 = symbol(1, [{"x": [0], "xi": [1], "re": "1", "im": "0"}])
X1 = symbol(1, [{"x": [1], "xi": [0], "re": "1", "im": "0"}])
MINUS_XI_SQ = symbol(1, [{"x": [0], "xi": [2], "re": "-1", "im": "0"}])


def test_compose_worked_example():
    composed, exact = _psido.compose_symbols_json(XI1, X1, 1)
    assert exact
    data = json.loads(composed)
    assert data["n"] == 1
    # x1 xi1 - i
    terms = {(tuple(t["x"]), tuple(t["xi"])): (t["re"], t["im"]) for t in data["terms"]}
    assert terms[((0,), (0,))] == ("0", "-1")
    assert terms[((1,), (1,))] == ("1", "0")


def test_apply_symbol_differentiates():
    n = 64
    x = 2.0 * np.pi * np.arange(n) / n
    f = np.sin(x).astype(complex)
    ixi = symbol(1, [{"x": [0], "xi": [1], "re": "0", "im": "1"}])
    out = _psido.apply_symbol(ixi, f, [2.0 * np.pi])
    assert np.allclose(out, np.cos(x), atol=1e-12)


def test_remainder_report_is_tiny():
    n = 64
    x = 2.0 * np.pi * np.arange(n) / n
    f = (np.cos(x) + 0.3 * np.sin(5 * x)).astype(complex)
    rep = _psido.remainder_report(MINUS_XI_SQ, 1.0, 2.0, f, [2.0 * np.pi])
    assert rep["max_highband_residual"] < 1e-10
    assert rep["r1"] == 2.0


def test_greens_kernel_constant():
    assert math.isclose(_psido.greens_kernel_constant(3), -1.0 / (4 * math.pi),
                        rel_tol=1e-14)


def test_greens_laplacian_potential():
    n = 16
    h = 2.0 / n
    axes = -1.0 + (np.arange(n) + 0.5) * h
    X, Y, Z = np.meshgrid(axes, axes, axes, indexing="ij")
    f = np.exp(-(X**2 + Y**2 + Z**2) / 0.12**2).astype(complex)
    u = _psido.greens_laplacian(f, [2.0, 2.0, 2.0])
    total = float(f.real.sum()) * h**3
    # far field looks like a point source of the integrated mass
    i = 13
    r = math.sqrt(3.0) * abs(axes[i])
    expect = -total / (4 * math.pi * r)
    assert math.isclose(u[i, i, i].real, expect, rel_tol=0.03)


def test_chart_curvature():
    chart = _psido.Chart.from_json(
        '{"name":"s2","n":2,"metric":"sphere2","box":[[0.5,2.6],[0.2,6.0]]}')
    assert chart.n == 2
    assert math.isclose(chart.scalar_curvature([1.1, 0.7]), 2.0, rel_tol=1e-9)
    R = chart.curvature([1.1, 0.7])
    assert R.shape == (2, 2, 2, 2)
    # antisymmetry in the last index pair
    assert np.allclose(R, -R.transpose(0, 1, 3, 2))


def test_l_jet_flat():
    chart = _psido.Chart.from_json(
        '{"name":"f","n":2,"metric":"flat","box":[[-1,1],[-1,1]]}')
    coeffs = _psido.l_jet_coefficients(chart, [0.0, 0.0], [2.0, -3.0], 3)
    assert coeffs[(1, 0)] == 2.0
    assert coeffs[(0, 1)] == -3.0
    assert len(coeffs) == 2  # nothing beyond the linear part


def test_nabla_l_vanishes_torsion_free():
    chart = _psido.Chart.from_json(
        '{"name":"s2","n":2,"metric":"sphere2","box":[[0.5,2.6],[0.2,6.0]]}')
    n2 = _psido.nabla_l(chart, [1.2, 0.4], [0.7, 1.3], 2)
    assert np.abs(n2).max() < 1e-12


def test_qed_inversion():
    a, b, res = _psido.invert_gauge_symbol([1.0, 1.0, 0.0, 0.0], 3.0)
    assert math.isclose(a, 0.5)
    assert math.isclose(b, 0.5)
    assert res < 1e-12
    prop = _psido.euclidean_propagator([1.0, 0.0, 0.0, 0.0], 1.0)
    assert math.isclose(prop[0, 0], 1.0 / (4 * math.pi ** 2), rel_tol=1e-14)


def test_hawking_pipeline():
    z = _psido.hurwitz_zeta(2.0, 1.0)
    assert abs(z - math.pi ** 2 / 6) < 1e-10

    sz = _psido.spectral_zeta(2.0, 1.0, 2.0 * math.pi)
    assert abs(sz - _psido.hurwitz_zeta(2.0, 1 + 1j)) == 0.0

    rho = 0.25 * _psido.spectral_density(1.0, 0.1, 0.25)
    assert math.isclose(rho, _psido.hawking_density(1.0, 0.1), rel_tol=1e-14)

    lam = _psido.solve_radial_eigenvalues(0.0, math.pi, 3)
    assert np.allclose(lam, [1.0, 2.0, 3.0], atol=1e-6)

    p, w = _psido.radial_operator_coeffs(4.0, 1.0)
    assert (p, w) == (8.0, 32.0)
