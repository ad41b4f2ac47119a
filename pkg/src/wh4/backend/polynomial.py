"""
Exact polynomials over the rationals and Sturm-sequence root counting, on top
of sympy's dense polynomials over QQ.
"""
import logging
from fractions import Fraction

import sympy
from sympy import QQ, Poly, Rational, Symbol

from .errors import ZeroPolynomial

log = logging.getLogger(__name__)

X = Symbol('x')


def _to_sympy(c):
    c = Fraction(c)
    return Rational(c.numerator, c.denominator)


def _to_fraction(c):
    c = Rational(c)
    return Fraction(int(c.p), int(c.q))


class RationalPolynomial:
    """Polynomial with ascending exact coefficients; the zero polynomial has none."""
    __slots__ = ('poly', )

    def __init__(self, coeffs=()):
        descending = [_to_sympy(c) for c in reversed(list(coeffs))] or [0]
        object.__setattr__(self, 'poly', Poly(descending, X, domain=QQ))

    @classmethod
    def from_poly(cls, poly):
        out = cls.__new__(cls)
        object.__setattr__(out, 'poly', Poly(poly, X, domain=QQ))
        return out

    def __setattr__(self, name, value):
        raise AttributeError('RationalPolynomial is immutable')

    def __reduce__(self):
        return (RationalPolynomial, (self.coeffs, ))

    @classmethod
    def x(cls):
        return cls([0, 1])

    @property
    def coeffs(self):
        if self.poly.is_zero:
            return ()
        return tuple(_to_fraction(c) for c in reversed(self.poly.all_coeffs()))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def is_zero(self):
        return self.poly.is_zero

    @property
    def is_integral(self):
        return all(c.denominator == 1 for c in self.coeffs)

    def leading(self):
        return _to_fraction(self.poly.LC())

    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            return _to_fraction(self.poly.eval(_to_sympy(x)))
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        return RationalPolynomial.from_poly(self.poly + _as_poly(other).poly)

    __radd__ = __add__

    def __neg__(self):
        return RationalPolynomial.from_poly(-self.poly)

    def __sub__(self, other):
        return RationalPolynomial.from_poly(self.poly - _as_poly(other).poly)

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        return RationalPolynomial.from_poly(self.poly * _as_poly(other).poly)

    __rmul__ = __mul__

    def divmod(self, other):
        if other.is_zero:
            raise ZeroPolynomial('division by the zero polynomial')
        quotient, remainder = self.poly.div(other.poly)
        return (RationalPolynomial.from_poly(quotient),
                RationalPolynomial.from_poly(remainder))

    def derivative(self):
        return RationalPolynomial.from_poly(self.poly.diff(X))

    def compose_series(self, series):
        """P(series) by Horner's rule on QSeries values."""
        from .series import QSeries
        coeffs = self.coeffs
        if not coeffs:
            return QSeries.zero(series.prec)
        acc = QSeries.constant(coeffs[-1], max(series.relative_precision, 1))
        for c in reversed(coeffs[:-1]):
            acc = acc * series + c
        return acc

    def to_json(self):
        return [str(c) for c in self.coeffs]

    def __repr__(self):
        return f'RationalPolynomial({self})'

    def __str__(self):
        coeffs = self.coeffs
        if not coeffs:
            return '0'
        parts = []
        for i in reversed(range(len(coeffs))):
            c = coeffs[i]
            if not c:
                continue
            sign = '-' if c < 0 else '+'
            mag = abs(c)
            if i == 0:
                body = f'{mag}'
            else:
                power = 'x' if i == 1 else f'x^{i}'
                body = power if mag == 1 else f'{mag}*{power}'
            parts.append((sign, body))
        text = ('-' if parts[0][0] == '-' else '') + parts[0][1]
        for sign, body in parts[1:]:
            text += f' {sign} {body}'
        return text


def _as_poly(value):
    if isinstance(value, RationalPolynomial):
        return value
    return RationalPolynomial([value])


def sturm_sequence(poly):
    """Sturm chain of the square-free part of poly."""
    if poly.is_zero:
        raise ZeroPolynomial('Sturm sequence of the zero polynomial')
    return [RationalPolynomial.from_poly(p) for p in sympy.sturm(poly.poly)]


def sign_variations(chain, x):
    values = [p(x) for p in chain]
    signs = [(v > 0) - (v < 0) for v in values if v]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _check_interval(poly, lo, hi):
    if poly.is_zero:
        raise ZeroPolynomial('cannot count roots of the zero polynomial')
    if not lo < hi:
        raise ValueError(f'empty interval ({lo}, {hi})')


def sturm_count(poly, lo, hi):
    """Number of distinct real roots of poly in the open interval (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    _check_interval(poly, lo, hi)
    chain = sturm_sequence(poly)
    # V(lo) - V(hi) counts (lo, hi]; a root at hi is taken back out
    count = sign_variations(chain, lo) - sign_variations(chain, hi)
    if poly(hi) == 0:
        count -= 1
    log.debug(f'Sturm count of degree {poly.degree} on ({lo}, {hi}): {count}')
    return count


def closed_interval_count(poly, lo, hi):
    """Distinct real roots in [lo, hi]; endpoint roots are counted separately."""
    lo, hi = Fraction(lo), Fraction(hi)
    _check_interval(poly, lo, hi)
    endpoint_roots = [x for x in (lo, hi) if poly(x) == 0]
    count = poly.poly.count_roots(_to_sympy(lo), _to_sympy(hi))
    return count, endpoint_roots


def isolate_roots(poly, lo, hi, width=Fraction(1, 2**60)):
    """Disjoint intervals of width <= width each containing one distinct root in (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    _check_interval(poly, lo, hi)
    # roots at the endpoints are outside the open interval
    excluded = [x for x in (lo, hi) if poly(x) == 0]
    isolated = []
    for (a, b), _ in poly.poly.intervals(eps=_to_sympy(width),
                                         inf=_to_sympy(lo),
                                         sup=_to_sympy(hi)):
        a, b = _to_fraction(a), _to_fraction(b)
        if any(a <= x <= b for x in excluded):
            continue
        isolated.append((max(a, lo), min(b, hi)))
    return sorted(isolated)
