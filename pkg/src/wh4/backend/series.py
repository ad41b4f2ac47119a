"""
Truncated Laurent series in q with exact rational coefficients.

A series knows its coefficients for the exponents lead .. prec-1. Everything
below lead is zero, everything from prec on is unknown; asking for an unknown
coefficient raises PrecisionError instead of returning zero.
"""
import logging
from fractions import Fraction
from math import gcd

from .errors import DivisionByZeroSeries, PrecisionError

log = logging.getLogger(__name__)


def _lcm_denominator(values):
    den = 1
    for value in values:
        d = value.denominator
        den = den * d // gcd(den, d)
    return den


class QSeries:
    __slots__ = ('lead', 'prec', 'coeffs')

    def __init__(self, lead, prec, coeffs=()):
        coeffs = [Fraction(c) for c in coeffs]
        if prec < lead:
            raise ValueError(f'prec {prec} is below lead {lead}')
        if len(coeffs) != prec - lead:
            raise ValueError(
                f'expected {prec - lead} coefficients, got {len(coeffs)}')
        # normalize: strip known leading zeros
        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        object.__setattr__(self, 'lead', lead + start)
        object.__setattr__(self, 'prec', prec)
        object.__setattr__(self, 'coeffs', tuple(coeffs[start:]))

    def __setattr__(self, name, value):
        raise AttributeError('QSeries is immutable')

    def __reduce__(self):
        return (QSeries, (self.lead, self.prec, self.coeffs))

    @classmethod
    def from_dict(cls, terms, prec):
        """Series with the given {exponent: coefficient} terms, known below prec."""
        terms = {n: c for n, c in terms.items() if c != 0}
        if any(n >= prec for n in terms):
            raise ValueError('term beyond the precision of the series')
        lead = min(terms, default=prec)
        return cls(lead, prec, [terms.get(n, 0) for n in range(lead, prec)])

    @classmethod
    def zero(cls, prec):
        return cls(prec, prec, ())

    @classmethod
    def constant(cls, value, prec):
        return cls.from_dict({0: value}, prec)

    @classmethod
    def monomial(cls, exponent, prec, value=1):
        return cls.from_dict({exponent: value}, prec)

    @property
    def is_zero(self):
        return not self.coeffs

    @property
    def relative_precision(self):
        return self.prec - self.lead

    def __getitem__(self, n):
        if n >= self.prec:
            raise PrecisionError(
                f'coefficient of q^{n} is unknown (series known below q^{self.prec})')
        if n < self.lead:
            return Fraction(0)
        return self.coeffs[n - self.lead]

    def items(self):
        """Nonzero (exponent, coefficient) pairs in increasing exponent order."""
        return [(self.lead + i, c) for i, c in enumerate(self.coeffs) if c]

    def exponents(self):
        return [n for n, _ in self.items()]

    def truncate(self, prec):
        prec = min(prec, self.prec)
        lead = min(self.lead, prec)
        return QSeries(lead, prec, self.coeffs[:prec - lead])

    def agrees_with(self, other):
        """True when both series coincide on their common known range."""
        prec = min(self.prec, other.prec)
        lead = min(self.lead, other.lead, prec)
        return all(self[n] == other[n] for n in range(lead, prec))

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.lead, self.prec, self.coeffs) == (other.lead, other.prec,
                                                      other.coeffs)

    def __hash__(self):
        return hash((self.lead, self.prec, self.coeffs))

    def __add__(self, other):
        return add(self, _coerce(other, self))

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.lead, self.prec, [-c for c in self.coeffs])

    def __sub__(self, other):
        return add(self, -_coerce(other, self))

    def __rsub__(self, other):
        return add(_coerce(other, self), -self)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return mul(self, other)
        other = Fraction(other)
        return QSeries(self.lead, self.prec, [c * other for c in self.coeffs])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, QSeries):
            return div(self, other)
        return self * (1 / Fraction(other))

    def __pow__(self, e):
        return pow(self, e)

    def __repr__(self):
        return f'QSeries({self})'

    def __str__(self):
        parts = []
        for n, c in self.items():
            sign = '-' if c < 0 else '+'
            mag = abs(c)
            if n == 0:
                body = f'{mag}'
            else:
                power = 'q' if n == 1 else f'q^{n}'
                body = power if mag == 1 else f'{mag}{power}'
            parts.append((sign, body))
        if not parts:
            return f'O(q^{self.prec})'
        text = ('-' if parts[0][0] == '-' else '') + parts[0][1]
        for sign, body in parts[1:]:
            text += f' {sign} {body}'
        return text + f' + O(q^{self.prec})'

    def to_json(self):
        return {
            'lead': self.lead,
            'prec': self.prec,
            'coeffs': [f'{c.numerator}/{c.denominator}' for c in self.coeffs]
        }

    @classmethod
    def from_json(cls, data):
        return cls(data['lead'], data['prec'],
                   [Fraction(c) for c in data['coeffs']])


def _coerce(value, like):
    if isinstance(value, QSeries):
        return value
    return QSeries.constant(value, max(like.prec, 1))


def add(a, b):
    prec = min(a.prec, b.prec)
    lead = min(a.lead, b.lead, prec)
    return QSeries(lead, prec, [a[n] + b[n] for n in range(lead, prec)])


def mul(a, b):
    lead = a.lead + b.lead
    prec = min(a.prec + b.lead, b.prec + a.lead)
    size = prec - lead
    if size <= 0 or a.is_zero or b.is_zero:
        return QSeries.zero(prec)
    # integer convolution on scaled numerators
    da = _lcm_denominator(a.coeffs)
    db = _lcm_denominator(b.coeffs)
    left = [(i, int(c * da)) for i, c in enumerate(a.coeffs[:size]) if c]
    right = [int(c * db) for c in b.coeffs[:size]]
    out = [0] * size
    for i, x in left:
        limit = min(size - i, len(right))
        for j in range(limit):
            y = right[j]
            if y:
                out[i + j] += x * y
    scale = da * db
    return QSeries(lead, prec, [Fraction(c, scale) for c in out])


def div(a, b):
    if b.is_zero:
        raise DivisionByZeroSeries(
            f'divisor has no nonzero coefficient below q^{b.prec}')
    lead = a.lead - b.lead
    size = min(a.relative_precision, b.relative_precision)
    prec = lead + size
    if a.is_zero:
        return QSeries.zero(prec)
    b0 = b.coeffs[0]
    out = []
    for n in range(size):
        acc = a.coeffs[n] if n < len(a.coeffs) else Fraction(0)
        for j in range(1, min(n, len(b.coeffs) - 1) + 1):
            bj = b.coeffs[j]
            if bj:
                acc -= bj * out[n - j]
        out.append(acc / b0)
    return QSeries(lead, prec, out)


def pow(a, e):
    """a**e by repeated squaring; pow(a, 0) is 1 with the relative precision of a."""
    if e < 0:
        return div(QSeries.constant(1, a.relative_precision), pow(a, -e))
    result = QSeries.constant(1, max(a.relative_precision, 1))
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def q_derivative(a):
    return QSeries(a.lead, a.prec,
                   [(a.lead + i) * c for i, c in enumerate(a.coeffs)])


def U2(a):
    """sum a(n) q^n -> sum a(2n) q^n."""
    prec = -((-a.prec) // 2)
    if a.is_zero:
        return QSeries.zero(prec)
    lead = -((-a.lead) // 2)
    return QSeries(lead, prec, [a[2 * n] for n in range(lead, prec)])


def V2(a):
    """sum a(n) q^n -> sum a(n) q^(2n)."""
    prec = 2 * a.prec
    if a.is_zero:
        return QSeries.zero(prec)
    lead = 2 * a.lead
    return QSeries(lead, prec, [
        a[n // 2] if n % 2 == 0 else 0 for n in range(lead, prec)
    ])
