import math

import numpy as np
import pytest
from scipy import special

from supnorm import specfun
from supnorm.specfun import ArchimedeanParameter


def test_archimedean_parameter():
    h = ArchimedeanParameter.holomorphic(4)
    assert h.t == 1.5 and h.t_star == 2.5
    m = ArchimedeanParameter.maass(-2.0)
    assert m.t_star == 3.0
    with pytest.raises(ValueError):
        ArchimedeanParameter.holomorphic(3)
    with pytest.raises(ValueError):
        ArchimedeanParameter.holomorphic(0)


def test_bessel_j_matches_scipy_and_rejects_nonpositive():
    assert specfun.bessel_j(2, 3.0) == pytest.approx(float(special.jv(2, 3.0)))
    with pytest.raises(ValueError):
        specfun.bessel_j(2, 0.0)


@pytest.mark.parametrize("t", [0.5, 1.0, 3.0, 7.0])
@pytest.mark.parametrize("y", [0.2, 1.0, 4.0, 15.0])
def test_bessel_k_imag_against_quadrature_oracle(t, y):
    direct = specfun.bessel_k_imag(t, y)
    quad = specfun.bessel_k_imag_quadrature(t, y)
    assert direct == pytest.approx(quad, rel=1e-10, abs=1e-14)


def test_bessel_k_imag_even_in_t_and_t_zero():
    assert specfun.bessel_k_imag(2.0, 1.0) == specfun.bessel_k_imag(-2.0, 1.0)
    assert specfun.bessel_k_imag(0.0, 1.5) == pytest.approx(float(special.kv(0, 1.5)))


def test_bessel_y_imag_pair_real_and_t_zero():
    assert specfun.bessel_y_imag_pair(0.0, 2.0) == pytest.approx(2 * float(special.yv(0, 2.0)))
    # continuity of the pair at small t
    assert specfun.bessel_y_imag_pair(1e-4, 2.0) == pytest.approx(
        specfun.bessel_y_imag_pair(0.0, 2.0), rel=1e-3)


def test_whittaker_weight_holomorphic_closed_form():
    param = ArchimedeanParameter.holomorphic(6)
    y = 0.7
    expected = (4 * math.pi * y) ** 3 * math.exp(-2 * math.pi * y) / math.sqrt(math.factorial(5))
    assert specfun.whittaker_weight(param, y) == pytest.approx(expected, rel=1e-12)


def test_whittaker_weight_maass_form():
    param = ArchimedeanParameter.maass(1.0)
    y = 0.5
    expected = math.sqrt(y) * specfun.bessel_k_imag(1.0, 2 * math.pi * y)
    assert specfun.whittaker_weight(param, y) == pytest.approx(expected)


def test_voronoi_kernel_holomorphic():
    param = ArchimedeanParameter.holomorphic(4)
    y = 0.3
    assert specfun.voronoi_kernel(param, "-", y) == 0.0
    assert specfun.voronoi_kernel(param, "+", y) == pytest.approx(
        2 * math.pi * float(special.jv(3, 4 * math.pi * y)))


def test_voronoi_kernel_maass_minus_is_renormalized_k():
    param = ArchimedeanParameter.maass(1.5)
    y = 0.4
    expected = 4 * specfun.bessel_k_imag(3.0, 4 * math.pi * y)
    assert specfun.voronoi_kernel(param, "-", y) == pytest.approx(expected)


def test_voronoi_kernel_rejects_bad_sign():
    with pytest.raises(ValueError):
        specfun.voronoi_kernel(ArchimedeanParameter.maass(1.0), "x", 1.0)


def test_derivative_recurrences():
    rep = specfun.check_derivative_recurrences(2.0, [0.5, 1, 3, 10])
    assert rep["max_discrepancy_J"] < 1e-6
    assert rep["max_discrepancy_K"] < 1e-6


@pytest.mark.parametrize("family", ["J", "Y", "K"])
def test_ibp_identity(family):
    def bump(y):
        v = 2 * (y - 2.5) / 3
        return math.exp(-1 / (1 - v * v)) if abs(v) < 1 else 0.0

    rep = specfun.check_ibp_identity(bump, (1.0, 4.0), 1.0, 2.0, family)
    assert rep["converged"]
    assert rep["rel_error"] < 1e-7


def test_transition_bound_constant_is_modest():
    for t in (2.0, 5.0, 10.0):
        grid = [0.3 * t, 0.9 * t, t, 1.1 * t, 2 * t]
        rep = specfun.check_kbessel_transition_bound(t, grid)
        assert rep["constant"] < 10.0
    with pytest.raises(ValueError):
        specfun.check_kbessel_transition_bound(1.0, [1.0])


def test_bessel_j_shape_constant():
    rep = specfun.fit_bessel_j_shape(range(0, 12), np.geomspace(0.1, 1e3, 120))
    assert rep["constant"] < 50.0


def test_bessel_k_shape_constant():
    rep = specfun.fit_bessel_k_shape((0.0, 1.0, 4.0), np.geomspace(0.1, 40, 40))
    assert rep["constant"] < 50.0


def test_whittaker_shape_constant():
    params = [ArchimedeanParameter.holomorphic(4), ArchimedeanParameter.maass(2.0)]
    rep = specfun.fit_whittaker_shape(params, (0.2, 1.0, 3.0))
    assert rep["constant"] < 50.0
