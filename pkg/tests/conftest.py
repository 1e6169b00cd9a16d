import math

import numpy as np
import pytest

from cauchy_deriv.quad import AnalyticFunction


def monomial(k: int) -> AnalyticFunction:
    return AnalyticFunction(f"z^{k}", evaluate=lambda z: z ** k)


@pytest.fixture
def exp_fn():
    return AnalyticFunction("exp", evaluate=np.exp, order=1.0, type_=1.0,
                            nonnegative_coefficients=True)


def rel(a, b) -> float:
    return abs(a - b) / abs(b)


def inv_factorial(n: int) -> float:
    return math.exp(-math.lgamma(n + 1))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
