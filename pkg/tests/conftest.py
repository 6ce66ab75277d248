import numpy as np
import pytest

from hhverify.corpus import SmoothFunction, builtin_corpus, corpus_by_name
from hhverify.numerics import Interval


def poly_smooth(name, coeffs, domain=None):
    """SmoothFunction for a polynomial given low-to-high coefficients.

    The derivative chain comes from numpy's Polynomial.deriv, which is
    exact for the integer/rational coefficients used in tests.
    """
    p = np.polynomial.Polynomial(coeffs)
    derivs = tuple(p.deriv(k) for k in range(1, 5))
    return SmoothFunction(name=name, domain=domain or Interval(-10.0, 10.0),
                          func=p, derivs=derivs)


def reflected(f, interval):
    """g(x) = f(a + b - x) with the matching derivative chain."""
    s = interval.a + interval.b
    return SmoothFunction(
        name=f"reflect({f.name})",
        domain=f.domain,
        func=lambda x, g=f.func: g(s - x),
        derivs=tuple(
            (lambda x, g=d, sign=(-1.0) ** k: sign * g(s - x))
            for k, d in enumerate(f.derivs, start=1)
        ),
    )


@pytest.fixture(scope="session")
def corpus():
    return corpus_by_name(builtin_corpus())


@pytest.fixture(scope="session")
def unit():
    return Interval(0.0, 1.0)
