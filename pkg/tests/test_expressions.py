import math

import numpy as np
import pytest

from harmcont.expressions import (ExpressionError, compile_expression,
                                  differentiate, evaluate, parse)


def test_numbers_and_constants():
    assert evaluate(parse("2.5"), 0.0) == 2.5
    assert evaluate(parse("pi"), 0.0) == math.pi
    assert evaluate(parse("1e-3"), 0.0) == 1e-3
    assert evaluate(parse(".5"), 0.0) == 0.5


def test_precedence_and_associativity():
    assert evaluate(parse("2+3*4"), 0.0) == 14.0
    assert evaluate(parse("(2+3)*4"), 0.0) == 20.0
    assert evaluate(parse("2^3^2"), 0.0) == 512.0  # right-associative
    assert evaluate(parse("2**3"), 0.0) == 8.0
    assert evaluate(parse("-u^2"), 3.0) == -9.0
    assert evaluate(parse("6/3/2"), 0.0) == 1.0
    assert evaluate(parse("1-2-3"), 0.0) == -4.0


def test_functions():
    u = 0.7
    assert evaluate(parse("sin(u)"), u) == pytest.approx(math.sin(u))
    assert evaluate(parse("cos(u)"), u) == pytest.approx(math.cos(u))
    assert evaluate(parse("arctan(u)"), u) == pytest.approx(math.atan(u))
    assert evaluate(parse("ln(u^2+1)"), u) == pytest.approx(math.log(u * u + 1))
    assert evaluate(parse("abs(u)"), -2.0) == 2.0


def test_vectorized_evaluation():
    u = np.linspace(-2, 2, 11)
    tree = parse("pi^2*u + 5*(u^2+1)^(5/12)*sin(u)")
    expected = np.pi ** 2 * u + 5 * (u ** 2 + 1) ** (5 / 12) * np.sin(u)
    assert np.allclose(evaluate(tree, u), expected, atol=1e-14)
    # constants broadcast to the input shape
    assert evaluate(parse("2"), u).shape == u.shape


@pytest.mark.parametrize("text", ["", "2+", "sin", "sin 3", "(1+2", "1+2)",
                                  "2..5", "x+1", "foo(u)", "1 2"])
def test_syntax_errors(text):
    with pytest.raises(ExpressionError):
        parse(text)


@pytest.mark.parametrize("text,dtext", [
    ("u^3", "3*u^2"),
    ("sin(u)", "cos(u)"),
    ("cos(2*u)", "-2*sin(2*u)"),
    ("arctan(u)", "1/(1+u^2)"),
    ("ln(u)", "1/u"),
    ("u*sin(u)", "sin(u)+u*cos(u)"),
    ("1/u", "-1/u^2"),
])
def test_derivative_against_closed_form(text, dtext):
    d = differentiate(parse(text))
    ref = parse(dtext)
    for u in (0.3, 1.7, 2.9):
        assert evaluate(d, u) == pytest.approx(evaluate(ref, u), rel=1e-12)


def test_derivative_general_power():
    # d/du u^u = u^u (ln u + 1)
    d = differentiate(parse("u^u"))
    for u in (0.5, 1.0, 2.3):
        expected = u ** u * (math.log(u) + 1)
        assert evaluate(d, u) == pytest.approx(expected, rel=1e-12)


def test_derivative_abs():
    d = differentiate(parse("abs(u)"))
    assert evaluate(d, 2.0) == 1.0
    assert evaluate(d, -2.0) == -1.0


@pytest.mark.parametrize("text", [
    "pi^2*u + 5*(u^2+1)^(5/12)*sin(u)",
    "cos(u) + u*(pi^2 + (2/pi)*arctan(u) + 0.9*sin(ln(u^2+1)))",
    "u/(1+u^2)",
    "sin(cos(u)) - ln(u^2+2)/arctan(u+3)",
])
def test_compiled_derivative_matches_finite_differences(text):
    g, gp = compile_expression(text)
    rng = np.random.default_rng(12)
    u = rng.uniform(-20, 20, 60)
    h = 1e-6 * (1 + np.abs(u))
    fd = (g(u + h) - g(u - h)) / (2 * h)
    assert np.max(np.abs(fd - gp(u)) / np.maximum(np.abs(gp(u)), 1.0)) < 1e-6
