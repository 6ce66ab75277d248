import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hhverify.bounds import check_bound
from hhverify.corpus import make_power_family
from hhverify.errors import DomainError, ParameterError
from hhverify.means import (MeanRequest, application_check, arithmetic_mean,
                            f_alpha_link_check, generalized_log_mean)
from hhverify.numerics import Interval


def test_arithmetic_mean_values():
    assert arithmetic_mean(2.0, 4.0) == 3.0
    assert arithmetic_mean(1.0, 32.0) == 16.5
    assert arithmetic_mean(0.7, 0.7) == 0.7


def test_mean_request_validation():
    with pytest.raises(DomainError):
        MeanRequest(-1.0, 2.0, 1.0)
    with pytest.raises(DomainError):
        MeanRequest(0.0, 2.0, 1.0)
    with pytest.raises(DomainError):
        MeanRequest(2.0, 2.0, 1.0)
    with pytest.raises(DomainError):
        MeanRequest(3.0, 2.0, 1.0)


def test_log_mean_main_branch_values():
    # (2^3 - 1)/(3*1) = 7/3
    assert generalized_log_mean(MeanRequest(1.0, 2.0, 2.0)) == pytest.approx(7.0 / 3.0, rel=1e-15)
    # (2^6 - 1)/(6*1) = 63/6
    assert generalized_log_mean(MeanRequest(1.0, 2.0, 5.0)) == pytest.approx(10.5, rel=1e-15)


def test_log_mean_log_branch():
    value = generalized_log_mean(MeanRequest(1.0, math.e, -1.0))
    assert value == pytest.approx(math.e - 1.0, rel=1e-14)


def test_log_mean_identric_branch():
    # Moderate arguments allow the literal form (1/e)*(b^b/a^a)^(1/(b-a)).
    for a, b in [(1.0, math.e), (0.5, 2.5), (2.0, 3.0)]:
        ours = generalized_log_mean(MeanRequest(a, b, 0.0))
        literal = (1.0 / math.e) * (b ** b / a ** a) ** (1.0 / (b - a))
        assert ours == pytest.approx(literal, rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 100.0), st.floats(0.01, 100.0))
def test_log_mean_at_one_equals_arithmetic_mean(x, y):
    a, b = sorted((x, y))
    if a == b:
        return
    assert generalized_log_mean(MeanRequest(a, b, 1.0)) == arithmetic_mean(a, b)


def test_near_special_exponents_route_to_special_cases():
    req = MeanRequest(1.0, 2.0, -1.0 + 5e-13)
    exact = MeanRequest(1.0, 2.0, -1.0)
    assert generalized_log_mean(req) == generalized_log_mean(exact)
    req = MeanRequest(1.0, 2.0, 3e-13)
    exact = MeanRequest(1.0, 2.0, 0.0)
    assert generalized_log_mean(req) == generalized_log_mean(exact)


@pytest.mark.parametrize("p", [1.0, 2.0, 3.5])
@pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
def test_equal_argument_limit_main_branch(p, a):
    eps = 1e-6
    value = generalized_log_mean(MeanRequest(a, a + eps, p))
    assert value == pytest.approx(a ** p, rel=1e-4)


@pytest.mark.parametrize("p", [-1.0, 0.0])
def test_equal_argument_limit_special_branches(p):
    # Both special branches are genuine means, so they tend to a as b -> a;
    # at a = 1 that limit agrees with a**p for every p.
    a, eps = 1.0, 1e-6
    value = generalized_log_mean(MeanRequest(a, a + eps, p))
    assert value == pytest.approx(a ** p, rel=1e-4)


def test_link_identities_alpha_one():
    r = f_alpha_link_check(1.0, Interval(1.0, 2.0))
    assert max(r) <= 1e-10
    # The integral identity pairs the quadrature with L_5(1,2) = 63/6.
    assert generalized_log_mean(MeanRequest(1.0, 2.0, 5.0)) == pytest.approx(10.5)


def test_link_identities_alpha_half():
    r = f_alpha_link_check(0.5, Interval(1.0, 4.0))
    assert max(r) <= 1e-10


def test_link_identities_need_positive_interval():
    with pytest.raises(DomainError):
        f_alpha_link_check(1.0, Interval(0.0, 1.0))
    with pytest.raises(DomainError):
        f_alpha_link_check(1.0, Interval(-1.0, 2.0))


def test_degenerate_interval_rejected_by_type():
    with pytest.raises(DomainError):
        Interval(1.0, 1.0)


def test_application_derived_at_reference_point():
    v = application_check("A3_1", "derived", 1.0, 2.0, 1.0)
    # 12*A(1,32) - 12*L_5(1,2) - 20*L_3(1,2) = 198 - 126 - 75 = -3.
    assert v.lhs == 3.0
    assert v.rhs == pytest.approx(4.0, abs=1e-12)
    assert v.passed
    assert v.note == ""


def test_application_paper_variant_detects_printed_coefficient():
    v = application_check("A3_1", "paper", 1.0, 2.0, 1.0)
    # The printed middle coefficient is (1+3)(1+4)(1+4) = 100, giving 375.
    assert v.lhs == 303.0
    assert v.rhs == pytest.approx(4.0, abs=1e-12)
    assert not v.passed
    assert v.note == "printed coefficient refuted at this instance"


def test_application_degenerate_width_guard():
    v = application_check("A3_1", "derived", 1.0, 1.001, 1.0)
    assert v.passed
    assert v.rhs <= 1e-9


@pytest.mark.parametrize("tag,exponent", [
    ("A3_1", None), ("A3_2", 2.0), ("A3_3", 2.0),
    ("A3_4", None), ("A3_5", 2.0), ("A3_6", 2.0),
])
def test_all_derived_variants_pass(tag, exponent):
    for a, b in [(1.0, 2.0), (0.5, 1.5), (2.0, 5.0)]:
        for alpha in (0.25, 1.0):
            v = application_check(tag, "derived", a, b, alpha, exponent)
            assert v.passed, (tag, a, b, alpha)


_CLEARING = {"A3_1": ("ME1", 12.0), "A3_2": ("ME2", 12.0), "A3_3": ("ME3", 12.0),
             "A3_4": ("ME4", 24.0), "A3_5": ("ME5", 24.0), "A3_6": ("ME6", 24.0)}


@pytest.mark.parametrize("tag,exponent", [
    ("A3_1", None), ("A3_2", 2.0), ("A3_3", 2.0),
    ("A3_4", None), ("A3_5", 2.0), ("A3_6", 2.0),
])
def test_derived_variant_matches_scaled_bound_check(tag, exponent):
    source, clear = _CLEARING[tag]
    for a, b in [(1.0, 2.0), (0.5, 1.5)]:
        for alpha in (0.5, 1.0):
            iv = Interval(a, b)
            f = make_power_family(alpha, domain=iv)
            scale = clear * (alpha + 1) * (alpha + 2) * (alpha + 3) * (alpha + 4)
            direct = check_bound(source, f, iv, exponent, quad_tol=1e-12)
            v = application_check(tag, "derived", a, b, alpha, exponent)
            assert v.lhs == pytest.approx(scale * direct.lhs, rel=1e-9)
            assert v.rhs == pytest.approx(scale * direct.rhs, rel=1e-9)


def test_application_parameter_errors():
    with pytest.raises(ParameterError):
        application_check("A3_2", "derived", 1.0, 2.0, 1.0)  # missing p
    with pytest.raises(ParameterError):
        application_check("A3_1", "derived", 1.0, 2.0, 1.0, 2.0)  # stray exponent
    with pytest.raises(ParameterError):
        application_check("A3_9", "derived", 1.0, 2.0, 1.0)
    with pytest.raises(ParameterError):
        application_check("A3_1", "printed", 1.0, 2.0, 1.0)
    with pytest.raises(DomainError):
        application_check("A3_1", "derived", 1.0, 2.0, 1.5)
    with pytest.raises(DomainError):
        application_check("A3_1", "derived", -1.0, 2.0, 1.0)
