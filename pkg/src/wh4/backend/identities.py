"""
Exact checks of the coefficient identities satisfied by the level 4 bases:
duality between f and g (and between h and i), parity of exponents, the
vanishing constant term of f * g, the generating functions and the
derivative identity of f_{0,1}.

Every check collects all counterexamples instead of stopping at the first.
"""
import logging
from collections import namedtuple

from tqdm import tqdm

from .basis import basis_ladder, minimal_pole, prefactor_lead
from .errors import InsufficientPrecision, PrecisionError
from .forms import HAUPTMODUL_SHIFTS, g21, hauptmodul
from .series import V2, U2, mul, q_derivative

log = logging.getLogger(__name__)


class VerificationReport(
        namedtuple('VerificationReport',
                   ['identity', 'ranges', 'counterexamples'])):
    __slots__ = ()

    @property
    def passed(self):
        return not self.counterexamples

    def to_json(self):
        return {
            'identity': self.identity,
            'ranges': dict(self.ranges),
            'pass': self.passed,
            'counterexamples': [{
                key: str(value) if not isinstance(value, (int, list)) else value
                for key, value in example.items()
            } for example in self.counterexamples]
        }


def _progress(iterable, desc):
    return tqdm(iterable,
                desc=desc,
                disable=log.getEffectiveLevel() >= logging.ERROR)


def _finish(report):
    if report.passed:
        log.info(f'{report.identity}: passed on {report.ranges}.')
    else:
        log.error(f'{report.identity}: {len(report.counterexamples)} '
                  f'counterexample(s) on {report.ranges}.')
    return report


def _dual_check(identity, left_family, right_family, k, max_m, max_n):
    """
    coefficient of q^n in left_{k,m} == -(coefficient of q^m in right_{2-k,n})
    for every constructible m <= max_m and every n <= max_n in the free part
    of the left family.
    """
    dual_k = 2 - k
    first_n = minimal_pole(right_family, dual_k)
    left_prec = max(max_n + 1, prefactor_lead(left_family, k) + 2)
    right_prec = max(max_m + 1, prefactor_lead(right_family, dual_k) + 2)
    left = basis_ladder(left_family, k, max_m, left_prec)
    right = {
        b.pole: b
        for b in basis_ladder(right_family, dual_k, max_n, right_prec)
    }
    counterexamples = []
    for element in _progress(left, identity):
        for n in range(first_n, max_n + 1):
            a = element.series[n]
            b = right[n].series[element.pole]
            if a != -b:
                counterexamples.append({
                    'm': element.pole,
                    'n': n,
                    'left': a,
                    'right': b
                })
    ranges = {
        'k': k,
        'm': [minimal_pole(left_family, k), max_m],
        'n': [first_n, max_n]
    }
    return _finish(VerificationReport(identity, ranges, counterexamples))


def check_duality(k, max_m, max_n):
    """a_k(m, n) == -b_{2-k}(n, m)."""
    return _dual_check('duality', 'f', 'g', k, max_m, max_n)


def check_hi_duality(k, max_m, max_n):
    """Coefficients of h_{k,m} against those of i_{2-k,n}."""
    return _dual_check('hi-duality', 'h', 'i', k, max_m, max_n)


def check_parity(k, max_m, prec=None):
    """
    V2 U2 f_{k,m} vanishes for odd m and fixes f_{k,m} for even m, on the
    known range of the series.
    """
    lead = prefactor_lead('f', k)
    if prec is None:
        prec = max(max_m, 0) + lead + 32
    counterexamples = []
    for element in _progress(basis_ladder('f', k, max_m, prec), 'parity'):
        series = element.series
        image = V2(U2(series))
        for n in range(series.lead, series.prec):
            expected = series[n] if element.pole % 2 == 0 else 0
            if image[n] != expected:
                counterexamples.append({
                    'm': element.pole,
                    'n': n,
                    'left': image[n],
                    'right': expected
                })
    ranges = {'k': k, 'm': [-lead, max_m], 'prec': prec}
    return _finish(VerificationReport('parity', ranges, counterexamples))


def check_product_constant(k, max_m, max_n):
    """The constant term of f_{k,m} * g_{2-k,n} is zero."""
    dual_k = 2 - k
    fs = basis_ladder('f', k, max_m,
                      max(max_n + 1, prefactor_lead('f', k) + 2))
    gs = basis_ladder('g', dual_k, max_n,
                      max(max_m + 1, prefactor_lead('g', dual_k) + 2))
    counterexamples = []
    for f in _progress(fs, 'product-constant'):
        for g in gs:
            product = mul(f.series, g.series)
            try:
                constant = product[0]
            except PrecisionError as error:
                raise InsufficientPrecision(
                    f'constant term of f_{{{k},{f.pole}}} * '
                    f'g_{{{dual_k},{g.pole}}} is out of range') from error
            if constant:
                counterexamples.append({
                    'm': f.pole,
                    'n': g.pole,
                    'left': constant,
                    'right': 0
                })
    ranges = {
        'k': k,
        'm': [fs[0].pole, max_m],
        'n': [gs[0].pole, max_n]
    }
    return _finish(
        VerificationReport('product-constant', ranges, counterexamples))


def genfn_r_order(family, k):
    """
    Smallest r order the generating function check accepts: max(m0, ell) + 2
    with m0 the lowest pole of the family. For f that is ell + 2 when
    ell >= 0. When ell < 0 the lowest pole m0 = |ell| is above ell, and
    |ell| + 2 keeps at least three powers of r in the comparison.
    """
    return max(minimal_pole(family, k), k // 2) + 2


def _genfn_check(identity, family, partner_family, denominator, k, r_order,
                 q_order):
    """
    Cross-multiplied generating function

        (D(r) - D(q)) * sum_{m=m0}^{M} family_{k,m}(q) r^m
            == family_{k,m0}(q) * partner_{2-k,m1}(r)

    with D the weight 0 element of pole order 1 in the family. Compared
    coefficient by coefficient for r^j, j <= M-1, and q^n, n <= q_order.
    Also compares the q^n part of the left sum with -partner_{2-k,n}(r).
    """
    dual_k = 2 - k
    first = minimal_pole(family, k)
    partner_pole = minimal_pole(partner_family, dual_k)
    lowest = genfn_r_order(family, k)
    if r_order < lowest:
        raise InsufficientPrecision(
            f'r order {r_order} must be at least {lowest}')
    span = abs(first) + abs(partner_pole)
    q_prec = q_order + 2
    elements = {
        b.pole: b.series
        for b in basis_ladder(family, k, r_order,
                              max(q_prec + 1, prefactor_lead(family, k) + 2))
    }
    d_prec = q_order + r_order + span + 4
    denom = denominator(d_prec)
    r_prec = max(r_order + 1, prefactor_lead(partner_family, dual_k) + 2)
    partners = {
        b.pole: b.series
        for b in basis_ladder(partner_family, dual_k,
                              max(partner_pole, q_order), r_prec)
    }
    numerator_r = partners[partner_pole]
    anchor = elements[first]

    counterexamples = []
    for j in _progress(range(first - 1, r_order), identity):
        left = sum((denom[j - m] * elements[m]
                    for m in range(first + 1, min(j + 1, r_order) + 1)),
                   denom[j - first] * elements[first])
        if j >= first:
            left = left - mul(denom, elements[j])
        right = numerator_r[j] * anchor
        for n in range(-r_order - 1, q_order + 1):
            if left[n] != right[n]:
                counterexamples.append({
                    'j': j,
                    'n': n,
                    'left': left[n],
                    'right': right[n]
                })
        if j < first:
            continue
        # the r^j q^n coefficient of the sum itself, against the expansion in r
        for n in range(partner_pole, q_order + 1):
            a = elements[j][n]
            b = -partners[n][j]
            if a != b:
                counterexamples.append({
                    'j': j,
                    'n': n,
                    'left': a,
                    'right': b,
                })
    ranges = {'k': k, 'r': [first, r_order - 1], 'q': [-r_order - 1, q_order]}
    return _finish(VerificationReport(identity, ranges, counterexamples))


def _f01(prec):
    return hauptmodul('inf', prec)


def _h01(prec):
    return hauptmodul('zero', prec)


def check_genfn(k, r_order, q_order):
    """Generating function of the f_{k,m}, with numerator f_{k,-ell} g_{2-k,ell+1}."""
    return _genfn_check('genfn', 'f', 'g', _f01, k, r_order, q_order)


def check_hi_genfn(k, r_order, q_order):
    """Generating function of the h_{k,m}, with numerator h_{k,1-ell} i_{2-k,ell}."""
    return _genfn_check('hi-genfn', 'h', 'i', _h01, k, r_order, q_order)


def check_denominators(prec=40):
    """
    psi_{1/2}(z) - psi_{1/2}(t) == psi_0(z) - psi_0(t) == psi_inf(z) - psi_inf(t):
    the three Hauptmoduln differ by constants only.
    """
    half = hauptmodul('half', prec)
    counterexamples = []
    for variant, shift in HAUPTMODUL_SHIFTS.items():
        difference = half - hauptmodul(variant, prec)
        for n in range(min(difference.lead, 0), difference.prec):
            expected = -shift if n == 0 else 0
            if difference[n] != expected:
                counterexamples.append({
                    'variant': variant,
                    'n': n,
                    'left': difference[n],
                    'right': expected
                })
    return _finish(
        VerificationReport('denominators', {'prec': prec}, counterexamples))


def check_derivative(prec=60):
    """q d/dq f_{0,1} + g_{2,1} == 0."""
    total = q_derivative(hauptmodul('inf', prec)) + g21(prec)
    counterexamples = [{
        'n': n,
        'left': c,
        'right': 0
    } for n, c in total.items()]
    return _finish(
        VerificationReport('derivative', {'prec': prec}, counterexamples))
