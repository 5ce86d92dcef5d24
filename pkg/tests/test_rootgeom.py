import math

import numpy as np
import pytest

from hyplab.curvelab import SampledCurve, fd_derivative, lq_norm, root_curve
from hyplab.errors import GridError
from hyplab.rootgeom import (
    SampledField,
    area_report,
    graph_area,
    integrate,
    jacobian_minor,
    jacobian_minor_norm,
    partials,
    polynomial_functional_gap,
    zero_set_area,
)

# mpmath quad of sqrt(1 + x^2 / (x^2 + 1/n^2)) over [-1, 1] for n = 1, 2, 4, ..., 256
GRAPH_AREA = {
    1: 2.199374827478409,
    2: 2.394732386079344,
    4: 2.572306544732477,
    8: 2.689658204672103,
    16: 2.756302355543353,
    32: 2.791675579794245,
    64: 2.809878804778724,
    128: 2.819109811766917,
    256: 2.823757678999455,
}


def sheets(n, N=8192):
    def f(x):
        r = np.sqrt(x ** 2 + 1.0 / n ** 2)
        return np.stack([-r, r], -1)
    return SampledField.from_function(f, [(-1.0, 1.0)], [N])


def test_field_validation():
    with pytest.raises(GridError):
        SampledField(((0, 1), (0, 1), (0, 1)), np.zeros((3, 3, 3, 1)))
    with pytest.raises(GridError):
        SampledField(((0, 1),), np.zeros((3,)))
    with pytest.raises(GridError):
        SampledField(((0, 1),), np.zeros((2, 1)))


def test_identity_field():
    fld = SampledField.from_function(lambda x: x, [(0.0, 1.0)], [50])
    for q in (1, 2, 3.5):
        assert jacobian_minor_norm(fld, q) == pytest.approx(1.0, abs=1e-12)


def test_minor_norm_of_abs_pair():
    fld = SampledField.from_function(lambda x: np.stack([-np.abs(x), np.abs(x)], -1), [(-1.0, 1.0)], [4000])
    # one node at the kink carries a central difference of 0, everything else sqrt 2
    assert jacobian_minor_norm(fld, 1) == pytest.approx(2 * math.sqrt(2), abs=2e-3)


def test_constant_field():
    fld = SampledField.from_function(lambda x, y: 0 * x + 4.0, [(0, 1), (0, 2)], [10, 12])
    assert jacobian_minor_norm(fld, 2) == 0.0
    assert graph_area(fld, 0) == pytest.approx(2.0, abs=1e-12)


def test_minor_consistency_m1():
    x = np.linspace(-2, 2, 801)
    a = SampledCurve(-2, 2, np.stack([0.3 * x, -(x ** 2 + 0.1)], 1), "coefficients")
    lam = root_curve(a)
    fld = SampledField.from_curve(lam)
    for q in (1.0, 2.0):
        assert jacobian_minor_norm(fld, q) == lq_norm(fd_derivative(lam, 1), q)


@pytest.mark.parametrize("alpha, beta", [(0.0, 1.0), (2.0, -1.0), (-0.7, 3.0)])
def test_affine_sheet(alpha, beta):
    fld = SampledField.from_function(lambda x: alpha * x + beta, [(0.0, 1.0)], [17])
    assert graph_area(fld, 0) == pytest.approx(math.sqrt(1 + alpha ** 2), abs=1e-10)


def test_graph_area_abs():
    fld = SampledField.from_function(np.abs, [(-1.0, 1.0)], [2000])
    assert graph_area(fld, 0) == pytest.approx(2 * math.sqrt(2), abs=1e-3)


def test_plane_area_m2():
    fld = SampledField.from_function(lambda x, y: 2 * x - y, [(0, 1), (0, 1)], [20, 30])
    assert graph_area(fld, 0) == pytest.approx(math.sqrt(6), abs=1e-10)


def test_m2_minor_matches_determinants():
    fld = SampledField.from_function(lambda x, y: np.stack([x + y, x * y], -1), [(0, 1), (0, 1)], [40, 40])
    J = partials(fld)
    # rows are partial_x, partial_y; the only 2 x 2 minor is x - y
    X, Y = np.meshgrid(np.linspace(0, 1, 41), np.linspace(0, 1, 41), indexing="ij")
    np.testing.assert_allclose(jacobian_minor(fld), np.abs(X - Y), atol=1e-10)
    assert J.shape == (41, 41, 2, 2)


def test_integrate_trapezoid():
    y = np.ones((5, 7))
    assert integrate((0.25, 0.5), y) == pytest.approx(3.0)


@pytest.mark.parametrize("n", sorted(GRAPH_AREA))
def test_graph_area_quadrature_oracle(n):
    assert graph_area(sheets(n), 1) == pytest.approx(GRAPH_AREA[n], abs=2e-4)


def test_graph_area_converges_monotonically():
    errs = [abs(graph_area(sheets(n), 1) - 2 * math.sqrt(2)) for n in sorted(GRAPH_AREA)]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert errs[-1] < 0.01


def test_zero_set_area_cross():
    fld = SampledField.from_function(lambda x: np.stack([-np.abs(x), np.abs(x)], -1), [(-1.0, 1.0)], [4000])
    assert zero_set_area(fld) == pytest.approx(4 * math.sqrt(2), abs=2e-2)
    assert zero_set_area(fld) < zero_set_area(fld, distinct=True)


def test_zero_set_area_disjoint_sheets():
    fld = sheets(4, N=2000)
    assert zero_set_area(fld) == pytest.approx(graph_area(fld, 0) + graph_area(fld, 1))
    areas = [zero_set_area(sheets(n)) for n in (8, 64, 256)]
    assert areas == sorted(areas)
    assert areas[-1] == pytest.approx(4 * math.sqrt(2), abs=0.02)


def test_zero_set_area_single_sheet():
    fld = SampledField.from_function(np.sin, [(0.0, 2.0)], [300])
    assert zero_set_area(fld) == graph_area(fld, 0)


def test_area_report():
    rep = area_report(sheets(2, N=500), qs=(1.0, 2.0))
    assert len(rep.per_root_area) == 2 and set(rep.jacobian_norm_lq) == {1.0, 2.0}


def test_polynomial_functional_gap_decreases():
    lim = SampledField.from_function(lambda x: np.stack([-np.abs(x), np.abs(x)], -1), [(-1.0, 1.0)], [4096])
    gaps = [polynomial_functional_gap(sheets(n, 4096), lim, lambda X: X[..., 0] * X[..., 1])
            for n in (1, 4, 16, 64)]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[-1] < 0.1 * gaps[0]
