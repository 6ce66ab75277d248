import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hhverify.errors import DomainError
from hhverify.numerics import Interval
from hhverify.quasiconvex import (check_quasi_convex, check_unimodal_profile)


def test_convex_parabola_is_certified():
    cert = check_quasi_convex(lambda x: x ** 2, Interval(-1.0, 2.0))
    assert cert.certified
    assert cert.counterexample is None
    assert cert.max_violation <= cert.tol


def test_monotone_root_is_certified():
    cert = check_quasi_convex(lambda x: x ** 0.5, Interval(0.1, 4.0))
    assert cert.certified


def test_sine_on_zero_pi_is_refuted_with_midpoint_witness():
    cert = check_quasi_convex(np.sin, Interval(0.0, math.pi))
    assert cert.verdict == "refuted"
    w = cert.counterexample
    assert w.x == pytest.approx(0.0, abs=1e-12)
    assert w.y == pytest.approx(math.pi, abs=1e-12)
    assert w.lam == pytest.approx(0.5, abs=1e-12)
    assert w.violation == pytest.approx(1.0, abs=1e-6)


def test_refutation_witness_reverifies():
    for g, iv in [(np.sin, Interval(0.0, math.pi)),
                  (lambda x: -x ** 2, Interval(-1.0, 1.0))]:
        cert = check_quasi_convex(g, iv)
        assert cert.verdict == "refuted"
        w = cert.counterexample
        mixed = float(np.asarray(g(w.lam * w.x + (1.0 - w.lam) * w.y), dtype=float))
        assert mixed > max(w.value_x, w.value_y) + cert.tol
        assert mixed == w.mixed_value


def test_certificates_are_deterministic():
    a = check_quasi_convex(np.sin, Interval(0.0, math.pi))
    b = check_quasi_convex(np.sin, Interval(0.0, math.pi))
    assert a == b


@settings(max_examples=50, deadline=None)
@given(st.floats(0.1, 5.0), st.floats(-3.0, 3.0), st.floats(-5.0, 5.0))
def test_convex_quadratics_certify(a, b, c):
    cert = check_quasi_convex(lambda x: a * x ** 2 + b * x + c,
                              Interval(-2.0, 2.0), n_grid=31)
    assert cert.certified


def test_tolerance_scales_with_magnitude():
    # A large monotone function: rounding noise in the mixing arithmetic
    # must not refute it.
    cert = check_quasi_convex(lambda x: np.exp(2.0 * x), Interval(2.0, 4.0))
    assert cert.certified


def test_grid_size_validation():
    with pytest.raises(DomainError):
        check_quasi_convex(np.sin, Interval(0.0, 1.0), n_grid=2)
    with pytest.raises(DomainError):
        check_quasi_convex(np.sin, Interval(0.0, 1.0), tol=-1.0)
    with pytest.raises(DomainError):
        check_unimodal_profile(np.sin, Interval(0.0, 1.0), n_grid=1)


def test_absolute_value_profile_splits_at_origin():
    profile = check_unimodal_profile(np.abs, Interval(-1.0, 1.0), n_grid=101)
    assert profile.decreasing_then_increasing
    assert profile.split_index == 50


def test_monotone_profile_splits_at_left_end():
    profile = check_unimodal_profile(lambda x: x ** 3, Interval(0.0, 2.0))
    assert profile.decreasing_then_increasing
    assert profile.split_index == 0


def test_concave_parabola_profile_is_not_unimodal():
    profile = check_unimodal_profile(lambda x: -x ** 2, Interval(-1.0, 1.0))
    assert not profile.decreasing_then_increasing


def test_scan_and_profile_agree_on_corpus(corpus):
    for f in corpus.values():
        iv = f.domain
        cert = check_quasi_convex(f.func, iv, n_grid=101)
        profile = check_unimodal_profile(f.func, iv, n_grid=101)
        assert cert.certified == profile.decreasing_then_increasing, f.name


def test_scan_and_profile_agree_on_refuted_cases():
    for g, iv in [(np.sin, Interval(0.0, math.pi)),
                  (lambda x: -x ** 2, Interval(-1.0, 1.0))]:
        cert = check_quasi_convex(g, iv, n_grid=101)
        profile = check_unimodal_profile(g, iv, n_grid=101)
        assert cert.verdict == "refuted"
        assert not profile.decreasing_then_increasing
