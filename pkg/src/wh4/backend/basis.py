"""
The canonical bases f_{k,m}, g_{k,m}, h_{k,m}, i_{k,m} of weakly holomorphic
forms of level 4 that are holomorphic away from the cusp at infinity.

Every family is spanned by prefactor * psi_{1/2}^j for j = 0, 1, ...; the basis
element of pole order m is the echelon row whose expansion is
q^{-m} + (free coefficients from exponent lead+1 on), where lead is the
exponent of the leading term of the prefactor.
"""
import logging
from collections import namedtuple
from fractions import Fraction
from functools import lru_cache

from .errors import (GapNotAchievable, InsufficientPrecision,
                     NonIntegralFaber, PoleOrderTooSmall)
from .forms import F_power, hauptmodul
from .polynomial import RationalPolynomial
from .series import mul, pow

log = logging.getLogger(__name__)

BasisElement = namedtuple(
    'BasisElement', ['family', 'weight', 'ell', 'pole', 'series', 'faber'])

# offset of the prefactor's leading exponent from ell, and its Hauptmodul factors
FAMILIES = {
    'f': (0, ()),
    'g': (-2, ('half', 'zero')),
    'h': (-1, ('zero', )),
    'i': (-1, ('half', )),
}

GUARD_TERMS = 8
DEFAULT_TERMS = 64


def _ell(k):
    if k % 2:
        raise ValueError(f'weight must be even, got {k}')
    return k // 2


def prefactor_lead(family, k):
    """Leading exponent of the prefactor, equal to the last exponent of the gap."""
    return _ell(k) + FAMILIES[family][0]


def minimal_pole(family, k):
    return -prefactor_lead(family, k)


def prefactor(family, k, prec):
    """F^ell times the family's Hauptmodul factors, known below prec."""
    ell = _ell(k)
    offset, factors = FAMILIES[family]
    series = F_power(ell, prec + len(factors) + 2)
    for variant in factors:
        series = mul(series, hauptmodul(variant, prec - ell - offset + 4))
    return series.truncate(prec)


def _validate(family, k, m, prec):
    if family not in FAMILIES:
        raise ValueError(f'unknown family {family!r}')
    lowest = minimal_pole(family, k)
    if m < lowest:
        raise PoleOrderTooSmall(
            f'{family}_{{{k},{m}}} needs pole order at least {lowest}')
    lead = prefactor_lead(family, k)
    if prec < lead + 2:
        raise InsufficientPrecision(
            f'precision {prec} cannot pin the gap ending at q^{lead} '
            f'(need at least {lead + 2})')


@lru_cache(maxsize=256)
def basis_ladder(family, k, m_max, prec):
    """All elements of a family of weight k with pole orders up to m_max, each known below prec."""
    _validate(family, k, m_max, prec)
    ell = _ell(k)
    lead = prefactor_lead(family, k)
    lowest = -lead
    steps = m_max - lowest
    top = prec + steps
    psi = hauptmodul('half', top + m_max + 4)
    row = prefactor(family, k, top)
    row_poly = RationalPolynomial([1])
    x = RationalPolynomial.x()

    reduced = {}
    for j in range(steps + 1):
        pole = lowest + j
        if j:
            row = mul(row, psi)
            row_poly = row_poly * x
        element, poly = row, row_poly
        # clear the gap exponents -pole+1 .. lead with earlier echelon rows
        for e in range(-pole + 1, lead + 1):
            c = element[e]
            if c:
                other, other_poly = reduced[-e]
                element = element - c * other
                poly = poly - c * other_poly
        if element[-pole] != 1 or any(element[e]
                                      for e in range(-pole + 1, lead + 1)):
            raise GapNotAchievable(
                f'{family}_{{{k},{pole}}}: reduction does not reach the gap')
        reduced[pole] = (element, poly)
    log.debug(f'Built {family}-ladder of weight {k} up to pole {m_max} '
              f'below q^{prec}.')
    return tuple(
        BasisElement(family=family,
                     weight=k,
                     ell=ell,
                     pole=pole,
                     series=reduced[pole][0].truncate(prec),
                     faber=reduced[pole][1])
        for pole in sorted(reduced))


def make_element(family, k, m, prec=None):
    if prec is None:
        prec = max(-m + DEFAULT_TERMS,
                   prefactor_lead(family, k) + GUARD_TERMS)
    return basis_ladder(family, k, m, prec)[-1]


def make_f(k, m, prec=None):
    return make_element('f', k, m, prec)


def make_g(k, m, prec=None):
    return make_element('g', k, m, prec)


def make_h(k, m, prec=None):
    return make_element('h', k, m, prec)


def make_i(k, m, prec=None):
    return make_element('i', k, m, prec)


def gap_holds(element):
    """q^{-m} + O(q^{lead+1}): pole term 1 and zeros between it and the free part."""
    lead = prefactor_lead(element.family, element.weight)
    series = element.series
    return series[-element.pole] == 1 and all(
        series[e] == 0 for e in range(-element.pole + 1, lead + 1))


def faber_extract(element):
    """
    Recover P with series = prefactor * P(psi_{1/2}) by dividing out the
    prefactor and peeling leading powers of psi_{1/2}.
    """
    series = element.series
    base = prefactor(element.family, element.weight, series.prec + 2)
    quotient = (series / base)
    degree = element.pole - minimal_pole(element.family, element.weight)
    if quotient.prec <= 0:
        raise InsufficientPrecision(
            f'quotient known only below q^{quotient.prec}; '
            'the constant term of the Faber polynomial is out of reach')
    psi = hauptmodul('half', quotient.prec + degree + 2)
    coeffs = [Fraction(0)] * (degree + 1)
    remainder = quotient
    for d in range(degree, -1, -1):
        c = remainder[-d]
        coeffs[d] = c
        if c:
            remainder = remainder - c * pow(psi, d)
    if not remainder.is_zero:
        raise InsufficientPrecision(
            f'remainder {remainder} after peeling; not a polynomial in psi')
    poly = RationalPolynomial(coeffs)
    if not poly.is_integral:
        raise NonIntegralFaber(f'non-integral Faber polynomial {poly}')
    return poly


def reconstruct(element, poly=None):
    """prefactor * P(psi_{1/2}) on the known range of the element."""
    poly = poly if poly is not None else element.faber
    series = element.series
    extra = element.pole + abs(prefactor_lead(element.family,
                                              element.weight)) + 6
    psi = hauptmodul('half', series.prec + extra)
    base = prefactor(element.family, element.weight, series.prec + extra)
    return mul(base, poly.compose_series(psi))


def valence_count(element):
    """Nontrivial zeros predicted by the valence formula: m + k/2."""
    return element.pole + element.ell


def order_at_infinity(element):
    return element.series.lead


def coefficient(element, n):
    """a_k(m, n) (or the b/h/i analogue): the coefficient of q^n."""
    return element.series[n]
