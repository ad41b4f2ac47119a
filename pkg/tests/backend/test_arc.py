from fractions import Fraction

import mpmath
import pytest

from wh4.backend.arc import (count_sign_changes, cosine_target, eval_on_arc,
                             faber_roots_to_theta, initial_terms,
                             psi_from_thetas, psi_on_arc, psi_profile,
                             scan_arc, series_sum, sturm_window_count,
                             theorem_bound)
from wh4.backend.basis import make_f
from wh4.backend.errors import TailNotConverged
from wh4.backend.polynomial import RationalPolynomial
from wh4.backend.series import QSeries


@pytest.mark.parametrize('k,m,bound', [(0, 16, 11), (4, 24, 17), (0, 20, 14),
                                       (2, 20, 14), (-2, 21, 14), (0, 0, 0),
                                       (0, -1, -1)])
def test_theorem_bound(k, m, bound):
    assert theorem_bound(k, m) == bound


@pytest.mark.parametrize('k,m,theta,target', [
    (0, 3, lambda: mpmath.mpf(0), 2),
    (0, 2, lambda: mpmath.pi / 2, -2),
    (4, 0, lambda: mpmath.pi, -2),
])
def test_cosine_target(k, m, theta, target):
    with mpmath.workprec(128):
        assert abs(cosine_target(k, m, theta()) - target) < mpmath.mpf(10)**-30


def test_constant_form_on_arc():
    sample = eval_on_arc(make_f(0, 0, 20), mpmath.pi / 3)
    assert sample.weighted_value == 1
    assert sample.imag_residual == 0
    assert sample.tail_estimate == 0


def test_f01_vanishes_at_the_midpoint():
    with mpmath.workprec(256):
        theta = mpmath.pi / 2
    sample = eval_on_arc(make_f(0, 1, 120), theta)
    assert abs(sample.weighted_value) <= sample.tail_estimate + mpmath.mpf(2)**-100
    assert abs(sample.cosine_target) < mpmath.mpf(10)**-30


def test_eval_on_arc_rejects_bad_arguments():
    element = make_f(0, 1, 40)
    with pytest.raises(ValueError):
        eval_on_arc(element, 1, bits=32)
    with pytest.raises(ValueError):
        eval_on_arc(element, 4)


def test_series_sum_raises_when_terms_run_out():
    series = QSeries(0, 8, [1] * 8)
    with mpmath.workprec(128):
        with pytest.raises(TailNotConverged):
            series_sum(series, mpmath.mpf('0.9'), 128)


def test_series_sum_of_a_polynomial_has_no_tail():
    series = QSeries(0, 8, [1, 2, 0, 0, 0, 0, 0, 0])
    with mpmath.workprec(128):
        total, tail = series_sum(series, mpmath.mpf('0.5'), 128)
    assert total == 2
    assert tail == 0


def test_initial_terms_grow_with_the_pole():
    assert initial_terms(0) == 64
    assert initial_terms(16) == 320
    assert initial_terms(-3, 200) == 200


def test_psi_at_the_midpoint_is_eight():
    with mpmath.workprec(256):
        theta = mpmath.pi / 2
    value, residual = psi_on_arc(theta)
    assert abs(value - 8) < mpmath.mpf(10)**-30
    assert residual < mpmath.mpf(10)**-30


def test_count_sign_changes_ignores_samples_inside_their_error_bar():
    values = [1.0, -1.0, 0.001, 1.0, -1.0]
    assert count_sign_changes(values, [0.1] * 5) == 3
    assert count_sign_changes([1.0, 0.0, 1.0], [0.0] * 3) == 0
    assert count_sign_changes([1.0, 0.05, -1.0], [0.1] * 3) == 1


def test_faber_root_at_eight_sits_at_the_midpoint():
    located = faber_roots_to_theta(RationalPolynomial([-8, 1]), samples=40)
    assert len(located) == 1
    x, theta, in_window = located[0]
    assert abs(x - 8) < Fraction(1, 2**50)
    assert in_window
    assert abs(theta - mpmath.pi / 2) < mpmath.mpf(10)**-20


def test_faber_polynomial_without_real_roots():
    assert faber_roots_to_theta(RationalPolynomial([1, 0, 1])) == []


def test_scan_of_the_constant_form():
    with mpmath.workprec(256):
        lo, hi = mpmath.pi / 4, 3 * mpmath.pi / 4
    report = scan_arc(0, 0, lo, hi, 20, number_of_processes=2)
    assert report.sign_changes == 0
    assert report.satisfied
    assert len(report.arc_samples) == 20


def test_scan_agrees_with_sturm_count():
    with mpmath.workprec(256):
        lo, hi = mpmath.pi / 4, 3 * mpmath.pi / 4
    report = scan_arc(0, 2, lo, hi, 60, number_of_processes=2)
    assert report.sign_changes == 2
    assert report.theorem_bound == 1
    assert sturm_window_count(make_f(0, 2, 40).faber, lo, hi) == 2


def test_scan_meets_the_bound_at_the_threshold():
    with mpmath.workprec(256):
        lo, hi = mpmath.pi / 4, 3 * mpmath.pi / 4
    report = scan_arc(0, 16, lo, hi, 200, number_of_processes=2)
    assert report.sign_changes >= 11
    assert report.satisfied
    assert report.max_deviation < 2
    json = report.to_json()
    assert json['theorem_bound'] == 11
    assert json['satisfied']


@pytest.mark.parametrize('kwargs', [
    dict(family='h'),
    dict(samples=1),
    dict(theta_lo=2, theta_hi=1),
])
def test_scan_rejects_bad_arguments(kwargs):
    arguments = dict(k=0, m=2, theta_lo=0.5, theta_hi=2.5, samples=10)
    arguments.update(kwargs)
    with pytest.raises(ValueError):
        scan_arc(**arguments)



def _with_roots(roots):
    poly = RationalPolynomial([1])
    for r in roots:
        poly = poly * RationalPolynomial([-r, 1])
    return poly


@pytest.mark.parametrize('theta', [mpmath.pi / 3, mpmath.pi / 2, 2 * mpmath.pi / 3])
def test_theta_quotient_agrees_with_the_q_expansion(theta):
    expansion, residual = psi_on_arc(theta)
    assert abs(psi_from_thetas(theta) - expansion) < mpmath.mpf(10)**-30
    assert residual < mpmath.mpf(10)**-30


def test_psi_profile_runs_from_sixteen_to_zero():
    thetas, values = psi_profile(40, bits=128)
    assert len(thetas) == 40
    assert 0 < thetas[0] and thetas[-1] < mpmath.pi
    assert 15 < values[0] < 16
    assert 0 < values[-1] < 1


def test_faber_roots_near_both_cusps_are_located():
    poly = _with_roots([Fraction(1, 20), Fraction(319, 20)])
    located = faber_roots_to_theta(poly, bits=128, samples=20)
    assert len(located) == 2
    for root, expected in zip(located, [Fraction(1, 20), Fraction(319, 20)]):
        assert abs(root.x - expected) < Fraction(1, 2**50)
    for x, theta, in_window in located:
        assert in_window
        assert 0 < theta < mpmath.pi
        with mpmath.workprec(128):
            target = mpmath.mpf(x.numerator) / x.denominator
            assert abs(psi_from_thetas(theta, 128) - target) < mpmath.mpf(10)**-15
    # psi decreases along the arc
    assert located[0].theta > located[1].theta


def test_faber_roots_outside_a_window_are_flagged():
    poly = _with_roots(
        [Fraction(1, 10), Fraction(8), Fraction(159, 10)])
    with mpmath.workprec(256):
        lo, hi = mpmath.pi / 4, 3 * mpmath.pi / 4
    located = faber_roots_to_theta(poly, theta_lo=lo, theta_hi=hi, samples=40)
    assert len(located) == 3
    # roots come in increasing x: 1/10 beyond 3pi/4, 8 at pi/2, 159/10 before pi/4
    assert [root.in_window for root in located] == [False, True, False]
    assert all(root.theta is not None for root in located)


def test_faber_roots_need_both_window_ends():
    with pytest.raises(ValueError):
        faber_roots_to_theta(RationalPolynomial([-8, 1]), theta_lo=1)
