"""
The named forms of level 4 used to build every basis element:
theta, theta^4, E2, F, the three Hauptmoduln psi_{1/2}, psi_0, psi_inf and g_{2,1}.
"""
import logging
from collections import namedtuple
from functools import lru_cache

from .series import QSeries, V2, div, mul, pow

log = logging.getLogger(__name__)

NamedForm = namedtuple('NamedForm', ['name', 'weight', 'series'])

HAUPTMODUL_SHIFTS = {'half': 0, 'zero': -16, 'inf': -8}

FORM_WEIGHTS = {
    'theta': 0,  # half-integral; carried as 0, only theta^4 enters the bases
    'theta4': 2,
    'E2': 2,
    'F': 2,
    'psi_half': 0,
    'psi_zero': 0,
    'psi_inf': 0,
    'g21': 2,
}


@lru_cache(maxsize=None)
def sigma(n):
    """Sum of the divisors of n, by trial division."""
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d
            if d * d != n:
                total += n // d
        d += 1
    return total


def _check_prec(prec, minimum):
    if prec < minimum:
        raise ValueError(f'precision must be at least {minimum}, got {prec}')


@lru_cache(maxsize=64)
def theta(prec):
    _check_prec(prec, 1)
    terms = {0: 1}
    n = 1
    while n * n < prec:
        terms[n * n] = 2
        n += 1
    return QSeries.from_dict(terms, prec)


@lru_cache(maxsize=64)
def theta4(prec):
    return pow(theta(prec), 4)


@lru_cache(maxsize=64)
def eisenstein_E2(prec):
    _check_prec(prec, 1)
    terms = {0: 1}
    terms.update({n: -24 * sigma(n) for n in range(1, prec)})
    return QSeries.from_dict(terms, prec)


@lru_cache(maxsize=64)
def eisenstein_F(prec):
    _check_prec(prec, 2)
    return QSeries.from_dict({n: sigma(n) for n in range(1, prec, 2)}, prec)


def F_from_E2(prec):
    """(-E2(z) + 3 E2(2z) - 2 E2(4z)) / 24, known below prec."""
    e2 = eisenstein_E2(prec)
    combination = -e2 + 3 * V2(e2) - 2 * V2(V2(e2))
    return (combination / 24).truncate(prec)


@lru_cache(maxsize=64)
def hauptmodul(variant, prec):
    if variant not in HAUPTMODUL_SHIFTS:
        raise ValueError(f'unknown Hauptmodul variant {variant!r}')
    _check_prec(prec, 1)
    psi = div(theta4(prec + 2), eisenstein_F(prec + 2))
    shift = HAUPTMODUL_SHIFTS[variant]
    if shift:
        psi = psi + shift
    log.debug(f'Built psi_{variant} below q^{psi.prec}.')
    return psi


@lru_cache(maxsize=64)
def g21(prec):
    _check_prec(prec, 1)
    return mul(mul(eisenstein_F(prec + 2), hauptmodul('zero', prec + 1)),
               hauptmodul('half', prec + 1))


@lru_cache(maxsize=64)
def F_power(ell, prec):
    """F^ell known below prec (ell may be negative)."""
    base = eisenstein_F(max(prec - ell + 1, 2))
    return pow(base, ell).truncate(prec)


_BUILDERS = {
    'theta': theta,
    'theta4': theta4,
    'E2': eisenstein_E2,
    'F': eisenstein_F,
    'psi_half': lambda prec: hauptmodul('half', prec),
    'psi_zero': lambda prec: hauptmodul('zero', prec),
    'psi_inf': lambda prec: hauptmodul('inf', prec),
    'g21': g21,
}


def named_form(name, prec):
    """Build a NamedForm and assert the identity tying it to the others."""
    if name not in _BUILDERS:
        raise ValueError(f'unknown form {name!r}')
    series = _BUILDERS[name](prec)
    if name == 'theta4':
        assert series.agrees_with(pow(theta(prec), 4))
    elif name == 'F':
        assert series.agrees_with(F_from_E2(prec))
    elif name.startswith('psi_'):
        assert mul(hauptmodul('half', prec),
                   eisenstein_F(prec + 2)).agrees_with(theta4(prec + 2))
        assert series[0] == 8 + HAUPTMODUL_SHIFTS[name[4:]]
    elif name == 'g21':
        assert series.agrees_with(
            mul(theta4(prec + 2), hauptmodul('zero', prec + 1)))
    return NamedForm(name=name, weight=FORM_WEIGHTS[name], series=series)
