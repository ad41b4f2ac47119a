import pytest

from wh4.backend.forms import (F_from_E2, eisenstein_F, g21, hauptmodul,
                               named_form, sigma, theta, theta4)
from wh4.backend.series import QSeries, mul, q_derivative


def test_sigma():
    assert [sigma(n) for n in range(1, 11)] == [1, 3, 4, 7, 6, 12, 8, 15, 13, 18]


def test_theta():
    assert theta(10) == QSeries.from_dict({0: 1, 1: 2, 4: 2, 9: 2}, 10)


def test_F():
    assert eisenstein_F(10) == QSeries.from_dict(
        {1: 1, 3: 4, 5: 6, 7: 8, 9: 13}, 10)
    assert eisenstein_F(30).agrees_with(F_from_E2(30))


def test_theta4_is_eight_sigma_at_odd_exponents():
    series = theta4(40)
    for n in range(1, 40, 2):
        assert series[n] == 8 * sigma(n)


@pytest.mark.parametrize('variant,constant', [('half', 8), ('zero', -8),
                                              ('inf', 0)])
def test_hauptmoduln(variant, constant):
    psi = hauptmodul(variant, 10)
    assert psi.lead == -1
    assert [psi[n] for n in range(-1, 10)] == [
        1, constant, 20, 0, -62, 0, 216, 0, -641, 0, 1636
    ]


def test_psi_times_F_is_theta4():
    assert mul(hauptmodul('half', 30), eisenstein_F(30)).agrees_with(theta4(40))


def test_g21_is_minus_derivative_of_psi_inf():
    total = q_derivative(hauptmodul('inf', 40)) + g21(40)
    assert total.is_zero


@pytest.mark.parametrize('name', [
    'theta', 'theta4', 'E2', 'F', 'psi_half', 'psi_zero', 'psi_inf', 'g21'
])
def test_named_forms(name):
    form = named_form(name, 20)
    assert form.name == name
    assert form.series.prec >= 20


def test_unknown_form():
    with pytest.raises(ValueError):
        named_form('eta', 10)
    with pytest.raises(ValueError):
        hauptmodul('one', 10)
