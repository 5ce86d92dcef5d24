import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hyplab.errors import GridError, HyperbolicityError
from hyplab.polycore import vieta_batch
from hyplab.curvelab import (
    IntervalNest,
    SampledCurve,
    a_delta,
    boundary_width,
    bronshtein_bound,
    ck_norm,
    derivative_norm,
    dlq_norm,
    fd_derivative,
    fornberg_weights,
    glaeser_check,
    holder_seminorm,
    interpolate,
    interpolation_check,
    lipschitz,
    lq_norm,
    node_range,
    norm_report,
    reclusive_scan,
    root_curve,
    root_lipschitz,
    sup_norm,
    tschirnhausen_curve,
    w1q_norm,
)

# mpmath quad of |sign(x) - x / sqrt(x^2 + 1/n^2)| over [-1, 1]
L1_DERIVATIVE_GAP = {
    1: 1.17157287525381,
    2: 0.7639320225002103,
    4: 0.4384471871911697,
    8: 0.23443556292536258,
    16: 0.12109755726482532,
}


def curve(f, lo=-1.0, hi=1.0, n=200):
    return SampledCurve.from_function(f, lo, hi, n)


def example41(n, N=8192, lo=-2.0, hi=2.0):
    x = np.linspace(lo, hi, N + 1)
    return SampledCurve(lo, hi, np.stack([0 * x, -(x ** 2 + 1.0 / n ** 2)], 1), "coefficients")


def test_curve_validation():
    with pytest.raises(GridError):
        SampledCurve(0.0, 1.0, np.zeros(2))
    with pytest.raises(GridError):
        SampledCurve(1.0, 1.0, np.zeros(5))
    with pytest.raises(GridError):
        SampledCurve(0.0, 1.0, np.zeros((4, 2)), "coefficients")
    with pytest.raises(ValueError):
        SampledCurve(0.0, 1.0, np.zeros(5), "matrix")


def test_interval_nest():
    nest = IntervalNest((-1, 1), (-2, 2))
    assert nest.delta == 1
    with pytest.raises(ValueError):
        IntervalNest((-2, 1), (-2, 2))
    with pytest.raises(GridError):
        nest.check(curve(np.sin))


def test_fornberg_central_second_derivative():
    np.testing.assert_allclose(fornberg_weights(0.0, np.array([-1.0, 0.0, 1.0]), 2), [1, -2, 1])


def test_fd_constant_is_zero():
    c = curve(lambda x: 0 * x + 3.0)
    assert np.max(np.abs(fd_derivative(c, 1).values)) < 1e-12


def test_fd_exact_on_quadratics():
    c = curve(lambda x: x ** 2, n=100)
    np.testing.assert_allclose(fd_derivative(c, 1).values, 2 * c.x, atol=1e-10)
    np.testing.assert_allclose(fd_derivative(c, 2).values, 2.0, atol=1e-8)


def test_fd_second_order_slope():
    errs = []
    for n in (64, 128, 256, 512):
        c = curve(np.sin, 0.0, 2.0, n)
        errs.append(np.max(np.abs(fd_derivative(c, 2).values + np.sin(c.x))))
    slopes = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    assert np.all(np.abs(slopes - 2.0) < 0.2)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_fd_polynomial_exactness(k):
    # second-order stencils are exact on degree k + 1
    c = curve(lambda x: x ** (k + 1), n=64)
    exact = math.factorial(k + 1) * c.x
    np.testing.assert_allclose(fd_derivative(c, k).values, exact, atol=1e-6)
    assert boundary_width(k) == (k + 1) // 2


def test_fd_too_few_nodes():
    with pytest.raises(GridError):
        fd_derivative(SampledCurve(0.0, 1.0, np.arange(4.0)), 4)


def test_node_range_and_interpolate():
    c = curve(lambda x: 3 * x + 1, n=10)
    sl = node_range(c, (-0.5, 0.5))
    np.testing.assert_allclose(c.x[sl], np.linspace(-0.4, 0.4, 5))
    assert interpolate(c, 0.03) == pytest.approx(1.09)
    with pytest.raises(GridError):
        node_range(c, (-2.0, 0.0))


def test_norm_examples():
    assert holder_seminorm(curve(np.abs), 1.0) == pytest.approx(1.0)
    assert lq_norm(curve(lambda x: x, 0.0, 1.0, 4000), 2) == pytest.approx(1 / math.sqrt(3), abs=1e-6)
    z = curve(lambda x: 0 * x)
    for value in (sup_norm(z), ck_norm(z, 2), holder_seminorm(z, 0.5), lq_norm(z, 1), w1q_norm(z, 2)):
        assert value == 0.0


def test_ck_norm_monotone_in_k():
    c = curve(lambda x: np.exp(2 * x))
    vals = [ck_norm(c, k) for k in range(4)]
    assert vals == sorted(vals)


def test_holder_of_sqrt():
    # |sqrt x - sqrt y| <= |x - y|^(1/2) with equality at y = 0
    c = curve(np.sqrt, 0.0, 1.0, 400)
    assert holder_seminorm(c, 0.5) == pytest.approx(1.0, abs=1e-12)


def test_holder_sampled_mode_is_close_to_exact():
    # above the exact pair limit the lag set is sampled; the sup sits at lag N
    c = curve(np.sqrt, 0.0, 1.0, 8192)
    assert holder_seminorm(c, 0.5) == pytest.approx(1.0, abs=1e-12)
    assert holder_seminorm(c, 0.5, seed=1) == holder_seminorm(c, 0.5, seed=1)


@given(st.floats(0.1, 1.0), st.floats(1.0, 4.0))
def test_lq_monotone_in_q(q_ratio, p):
    q = max(1.0, p * q_ratio)
    c = curve(lambda x: np.sin(3 * x) + 0.5, 0.0, 1.0, 400)
    assert lq_norm(c, q) <= lq_norm(c, p) + 1e-4


def test_kink_rule_on_abs():
    c = curve(np.abs, n=200)
    mag, kinks = derivative_norm(c)
    assert kinks.tolist() == [100]
    np.testing.assert_allclose(mag, 1.0)
    assert dlq_norm(c, 1) == pytest.approx(2.0)


def test_norm_report_fields():
    rep = norm_report(curve(np.sin), (-0.5, 0.5), ks=(0, 1), gammas=(0.5,), qs=(1.0,))
    assert set(rep.ck) == {0, 1} and set(rep.holder) == {0.5} and set(rep.w1q) == {1.0}


def test_root_curve_example41():
    lam = root_curve(example41(4, N=400))
    np.testing.assert_allclose(lam.values[:, 1], np.sqrt(lam.x ** 2 + 1 / 16), atol=1e-12)
    np.testing.assert_allclose(lam.values[:, 0], -lam.values[:, 1])


def test_root_curve_rejects_non_hyperbolic():
    x = np.linspace(-1, 1, 11)
    a = SampledCurve(-1, 1, np.stack([0 * x, x], 1), "coefficients")
    with pytest.raises(HyperbolicityError) as info:
        root_curve(a)
    assert info.value.x > 0


@pytest.mark.parametrize("n", [1, 2, 4, 8, 16, 32])
def test_derivative_values_example41(n):
    lam = fd_derivative(root_curve(example41(n)).component(1), 1)
    assert interpolate(lam, 1 / n) == pytest.approx(1 / math.sqrt(2), abs=1e-3)
    assert interpolate(lam, -1 / n) == pytest.approx(-1 / math.sqrt(2), abs=1e-3)


@pytest.mark.parametrize("n", sorted(L1_DERIVATIVE_GAP))
def test_l1_derivative_gap(n):
    lim = example41(1)
    lim = SampledCurve(-2, 2, np.stack([0 * lim.x, -lim.x ** 2], 1), "coefficients")
    diff = root_curve(example41(n)).component(1) - root_curve(lim).component(1)
    assert dlq_norm(diff, 1, (-1, 1)) == pytest.approx(L1_DERIVATIVE_GAP[n], abs=2e-4)
    assert L1_DERIVATIVE_GAP[n] == pytest.approx(2 * (1 + 1 / n - math.sqrt(1 + 1 / n ** 2)), abs=1e-12)


def test_tschirnhausen_curve():
    x = np.linspace(0, 1, 11)
    lam = np.stack([x, x + 1, 3 * x], 1)
    t = tschirnhausen_curve(SampledCurve(0, 1, vieta_batch(lam), "coefficients"))
    np.testing.assert_allclose(t.values[:, 0], 0)
    r = root_curve(t).values
    np.testing.assert_allclose(r.sum(axis=1), 0, atol=1e-12)


def test_bronshtein_bound_example():
    x = np.linspace(-2, 2, 801)
    a = SampledCurve(-2, 2, np.stack([0 * x, -(x ** 2 + 1)], 1), "coefficients")
    nest = IntervalNest((-1, 1), (-2, 2))
    bound = bronshtein_bound(a, nest)
    # max-convention C^{1,1} norm of a2 on [-2, 2]: max(5, 4, 2) + 2 = 7
    assert bound == pytest.approx(math.sqrt(7), rel=1e-6)
    assert root_lipschitz(a, nest.I0).max() <= 1.0 <= bound


def test_bronshtein_example41_quotients():
    nest = IntervalNest((-1, 1), (-2, 2))
    for n in (1, 8, 64):
        assert root_lipschitz(example41(n, N=2048), nest.I0).max() <= 1.0


def test_a_delta_example():
    x = np.linspace(0, 2, 401)
    t = SampledCurve(0, 2, np.stack([0 * x, -x ** 2], 1), "coefficients")
    rep = a_delta(t, 1.0, 1.0)
    assert rep.A1 == pytest.approx(math.sqrt(2), rel=1e-9)
    assert rep.A2 == pytest.approx(math.sqrt(2), rel=1e-9)
    assert rep.A == pytest.approx(6 * math.sqrt(2), rel=1e-9)


def test_a_delta_zero_curve():
    x = np.linspace(-1, 1, 41)
    t = SampledCurve(-1, 1, np.zeros((41, 3)), "coefficients")
    assert a_delta(t, 0.0, 0.5).A == 0.0


def test_a_delta_halving():
    x = np.linspace(-2, 2, 401)
    t = SampledCurve(-2, 2, np.stack([0 * x, -(1 + 0 * x)], 1), "coefficients")
    assert a_delta(t, 0.0, 0.5).A1 == pytest.approx(2 * a_delta(t, 0.0, 1.0).A1)


def test_a_delta_rejects_non_tschirnhausen():
    x = np.linspace(-1, 1, 41)
    t = SampledCurve(-1, 1, np.stack([1 + 0 * x, -(1 + 0 * x)], 1), "coefficients")
    with pytest.raises(ValueError):
        a_delta(t, 0.0, 0.5)


def test_glaeser_examples():
    f = curve(lambda x: x ** 2, -1.0, 3.0, 800)
    assert glaeser_check(f, 1.0, 1.0) == (True, None)
    assert glaeser_check(f, 0.0, 1.0)[0]
    one = curve(lambda x: 1 + 0 * x, -2.0, 2.0)
    assert glaeser_check(one, 0.2, 1.0) == (True, True)
    with pytest.raises(ValueError):
        glaeser_check(curve(np.sin), 0.0, 1.0)


def test_interpolation_examples():
    assert interpolation_check(curve(lambda x: x, 0.0, 1.0, 100), 1, (0.0, 1.0)) == pytest.approx(1.0)
    assert interpolation_check(curve(lambda x: 0 * x + 2), 1, (-1.0, 1.0)) == 0.0
    r = [interpolation_check(curve(lambda x: x ** 3, 0.0, 1.0, n), 2, (0.0, 1.0)) for n in (200, 400)]
    assert math.isfinite(r[0]) and r[1] == pytest.approx(r[0], rel=0.02)


def test_reclusive_examples():
    x = np.linspace(-1, 1, 201)
    cross = SampledCurve(-1, 1, np.stack([0 * x, -x ** 2], 1), "coefficients")
    assert reclusive_scan(cross).candidates == [100]
    plateau = SampledCurve(-1, 1, np.stack([0 * x, -np.maximum(0, x) ** 4], 1), "coefficients")
    scan = reclusive_scan(plateau)
    assert scan.candidates == []
    assert scan.isolated_flags == [False]
    const = SampledCurve(-1, 1, np.stack([0 * x, -(1 + 0 * x)], 1), "coefficients")
    assert reclusive_scan(const).candidates == []


def test_lipschitz_of_ordered_roots_of_cross():
    x = np.linspace(-1, 1, 201)
    lam = root_curve(SampledCurve(-1, 1, np.stack([0 * x, -x ** 2], 1), "coefficients"))
    assert lipschitz(lam.component(0)) == pytest.approx(1.0)
