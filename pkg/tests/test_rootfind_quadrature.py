import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import optimize

from zpeff.errors import BracketError, ConvergenceError, DivergenceError
from zpeff.quadrature import QuadratureConfig, integrate_interval, integrate_semi_infinite
from zpeff.rootfind import solve_bracketed_root


def test_linear_root():
    assert solve_bracketed_root(lambda x: x - 0.5, 0.0, 1.0) == pytest.approx(0.5, abs=1e-12)


def test_square_bracket_rules():
    # x**2 on [-1, 2] has no strict sign change either, but [1, 2] is plainly rejected
    with pytest.raises(BracketError):
        solve_bracketed_root(lambda x: x * x, 1.0, 2.0)
    with pytest.raises(BracketError):
        solve_bracketed_root(lambda x: x * x, -1.0, 2.0)
    assert solve_bracketed_root(lambda x: x * x - 1.0, 0.0, 2.0) == pytest.approx(1.0, abs=1e-10)


def test_endpoint_root_returned():
    assert solve_bracketed_root(lambda x: x, 0.0, 1.0) == 0.0


def test_max_iterations():
    with pytest.raises(ConvergenceError):
        solve_bracketed_root(lambda x: math.copysign(abs(x - 1 / 3) ** 0.1, x - 1 / 3), 0.0, 1.0, tol=1e-15, maxiter=3)


@settings(max_examples=200, deadline=None)
@given(st.floats(-50, 50), st.floats(0.1, 5), st.floats(0.1, 5))
def test_agrees_with_scipy_brentq(root, left, right):
    f = lambda x: math.tanh(x - root) + 0.1 * (x - root) ** 3
    lo, hi = root - left, root + right
    ours = solve_bracketed_root(f, lo, hi, tol=1e-12)
    ref = optimize.brentq(f, lo, hi, xtol=1e-12)
    assert abs(ours - ref) < 1e-10
    assert lo <= ours <= hi


def test_quadrature_semi_infinite_power():
    # int_1^inf 2 x^-3 dx = 1
    assert integrate_semi_infinite(lambda x: 2 * x**-3, 1.0) == pytest.approx(1.0, abs=1e-12)


def test_quadrature_detects_divergent_tail():
    with pytest.raises(DivergenceError):
        integrate_semi_infinite(lambda x: 1.0 / x, 1.0)
    with pytest.raises(DivergenceError):
        integrate_semi_infinite(lambda x: x**-0.8, 2.0)


def test_quadrature_other_intervals():
    assert integrate_interval(lambda x: math.exp(-x), 0.0, math.inf) == pytest.approx(1.0, abs=1e-10)
    gauss = lambda x: math.exp(-x * x / 2) / math.sqrt(2 * math.pi)
    assert integrate_interval(gauss, -math.inf, math.inf) == pytest.approx(1.0, abs=1e-10)
    assert integrate_interval(lambda x: x, 0.0, 2.0) == pytest.approx(2.0)
    assert integrate_interval(lambda x: x, 2.0, 0.0) == pytest.approx(-2.0)


def test_quadrature_config_frozen():
    cfg = QuadratureConfig()
    assert cfg.abs_tol == 1e-10 and cfg.rel_tol == 1e-9
    with pytest.raises(Exception):
        cfg.abs_tol = 1.0
