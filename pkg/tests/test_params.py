import math

import numpy as np
import pytest

from qising.params import (ModelParams, SIGMA_X, coeff_a, coeff_b, new_params,
                           parse_theta, parse_word, word_str)

THETAS = [math.pi / 6, math.pi / 4, math.pi / 3, 0.3, 1.0, 1.4]


@pytest.mark.parametrize("theta", THETAS)
def test_derived_constants(theta):
    params = new_params(theta)
    assert params.beta1 == math.sin(2 * theta)
    assert params.gamma == pytest.approx((1 - params.beta1 ** 2) / 4, abs=0)
    # gamma = p (1 - p) is an algebraic identity
    assert params.gamma == pytest.approx(params.p * (1 - params.p), abs=1e-15)
    assert 0.0 <= params.gamma <= 0.25
    assert 0.5 <= params.p <= 1.0


def test_degenerate_flag():
    assert new_params(math.pi / 4).degenerate
    assert not new_params(math.pi / 6).degenerate


@pytest.mark.parametrize("theta", THETAS)
def test_projectors(theta):
    params = new_params(theta)
    p1, p2 = params.projectors()
    np.testing.assert_allclose(p1 + p2, np.eye(2), atol=1e-15)
    for proj in (p1, p2):
        np.testing.assert_allclose(proj @ proj, proj, atol=1e-15)
        assert np.trace(proj) == pytest.approx(1.0)
    # the trace constants the whole construction hinges on
    assert np.trace(SIGMA_X @ p1) == pytest.approx(params.beta1, abs=1e-15)
    assert np.trace(SIGMA_X @ p2) == pytest.approx(-params.beta1, abs=1e-15)
    assert params.beta_of(1) == params.beta1
    assert params.beta_of(2) == -params.beta1


@pytest.mark.parametrize("theta", [0.0, math.pi / 2, -0.1, 2.0])
def test_theta_domain(theta):
    with pytest.raises(ValueError):
        new_params(theta)


def test_parse_theta():
    assert parse_theta("pi/6") == math.pi / 6
    assert parse_theta(" Pi/4 ") == math.pi / 4
    assert parse_theta("0.75") == 0.75
    with pytest.raises(ValueError):
        parse_theta("2pi")


def test_parse_word():
    assert parse_word("1121") == (1, 1, 2, 1)
    assert parse_word([2, 1]) == (2, 1)
    assert word_str((1, 2, 2)) == "122"
    with pytest.raises(ValueError):
        parse_word("")
    with pytest.raises(ValueError):
        parse_word("103")


def test_extension_coefficients():
    params = new_params(math.pi / 6)
    assert coeff_a(1, 1, params) == 0.0
    assert coeff_a(1, 2, params) == 1.0
    assert coeff_b(2, 2, params) == params.gamma
    assert coeff_b(2, 1, params) == -params.gamma


def test_params_frozen():
    params = new_params(1.0)
    with pytest.raises(AttributeError):
        params.gamma = 0.0
    assert params == ModelParams(params.theta, params.beta1, params.gamma,
                                 params.p, params.degenerate)
