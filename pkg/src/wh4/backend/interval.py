"""
Outward-rounded interval arithmetic over exact rationals.

Endpoints are Fractions whose denominators are powers of two no larger than
2^bits; every operation rounds the lower endpoint down and the upper endpoint
up to that grid, so the true value of any composed expression stays inside the
result. exp, sin, cos and pi are enclosed in-house by Taylor series with
explicit remainder bounds and Machin's formula.
"""
import logging
import re
from fractions import Fraction
from functools import lru_cache
from math import isqrt

log = logging.getLogger(__name__)

DEFAULT_BITS = 160

_bits = DEFAULT_BITS


def set_precision(bits):
    """Set the dyadic rounding grid to 2^-bits for all subsequent operations."""
    global _bits
    if bits < 64:
        raise ValueError(f'interval precision must be at least 64 bits, got {bits}')
    _bits = int(bits)
    log.debug(f'Interval precision set to {_bits} bits.')


def get_precision():
    return _bits


def _down(x):
    scale = 1 << _bits
    if scale % x.denominator == 0:
        return x
    return Fraction((x.numerator * scale) // x.denominator, scale)


def _up(x):
    scale = 1 << _bits
    if scale % x.denominator == 0:
        return x
    return Fraction(-((-x.numerator * scale) // x.denominator), scale)


class Interval:
    __slots__ = ('lo', 'hi')

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            raise ValueError(f'empty interval [{lo}, {hi}]')
        object.__setattr__(self, 'lo', lo)
        object.__setattr__(self, 'hi', hi)

    def __setattr__(self, name, value):
        raise AttributeError('Interval is immutable')

    def __reduce__(self):
        return (Interval, (self.lo, self.hi))

    @classmethod
    def rounded(cls, lo, hi):
        return cls(_down(Fraction(lo)), _up(Fraction(hi)))

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    def mag(self):
        """Largest absolute value in the interval."""
        return max(abs(self.lo), abs(self.hi))

    def mig(self):
        """Smallest absolute value in the interval."""
        if self.lo <= 0 <= self.hi:
            return Fraction(0)
        return min(abs(self.lo), abs(self.hi))

    def __contains__(self, x):
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= Fraction(x) <= self.hi

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return (self.lo, self.hi) == (other.lo, other.hi)

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __add__(self, other):
        other = _coerce(other)
        return Interval.rounded(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        other = _coerce(other)
        return Interval.rounded(self.lo - other.hi, self.hi - other.lo)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        products = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo,
                    self.hi * other.hi)
        return Interval.rounded(min(products), max(products))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.lo <= 0 <= other.hi:
            raise ZeroDivisionError(f'division by an interval containing 0: {other}')
        quotients = (self.lo / other.lo, self.lo / other.hi,
                     self.hi / other.lo, self.hi / other.hi)
        return Interval.rounded(min(quotients), max(quotients))

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def sqr(self):
        lo2, hi2 = self.lo * self.lo, self.hi * self.hi
        if self.lo <= 0 <= self.hi:
            return Interval.rounded(0, max(lo2, hi2))
        return Interval.rounded(min(lo2, hi2), max(lo2, hi2))

    def __pow__(self, e):
        if not isinstance(e, int):
            raise TypeError('only integer powers are supported')
        if e < 0:
            return 1 / (self**-e)
        result = Interval(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base.sqr()
        return result

    def __abs__(self):
        return Interval(self.mig(), self.mag())

    def sqrt(self):
        if self.lo < 0:
            raise ValueError(f'square root of an interval reaching below 0: {self}')
        return Interval(_sqrt_down(self.lo), _sqrt_up(self.hi))

    def exp(self):
        return Interval(_exp_point(self.lo).lo, _exp_point(self.hi).hi)

    def cos(self):
        return _lipschitz_trig(self, _cos_point)

    def sin(self):
        return _lipschitz_trig(self, _sin_point)

    def __repr__(self):
        return f'Interval({self})'

    def __str__(self):
        return f'[{float(self.lo):.17g}, {float(self.hi):.17g}]'

    def to_json(self):
        return {'lo': str(self.lo), 'hi': str(self.hi)}


def _coerce(value):
    if isinstance(value, Interval):
        return value
    return Interval(value)


def _sqrt_down(x):
    scale = 1 << _bits
    return Fraction(isqrt((x.numerator << (2 * _bits)) // x.denominator), scale)


def _sqrt_up(x):
    scale = 1 << _bits
    num = -((-x.numerator << (2 * _bits)) // x.denominator)
    root = isqrt(num)
    if root * root != num:
        root += 1
    return Fraction(root, scale)


def _taylor(y, pattern):
    """
    sum_j pattern[j % len(pattern)] y^j / j! with the remainder folded in.
    Requires |y| <= 4; the tail after the first omitted term is at most twice
    that term once j >= 2|y|.
    """
    eps = Fraction(1, 1 << (_bits + 4))
    bound = y.mag()
    acc = Interval(pattern[0])
    power = Interval(1)
    j = 0
    while True:
        j += 1
        power = power * y / j
        if j >= 2 * bound + 2 and power.mag() < eps:
            slack = 2 * power.mag()
            return acc + Interval(-slack, slack)
        c = pattern[j % len(pattern)]
        if c:
            acc = acc + c * power


def _exp_point(x):
    x = Fraction(x)
    if x == 0:
        return Interval(1)
    halvings = 0
    y = x
    while abs(y) > Fraction(1, 2):
        y /= 2
        halvings += 1
    result = _taylor(Interval(y), (1, ))
    for _ in range(halvings):
        result = result.sqr()
    return result


@lru_cache(maxsize=8)
def _arctan_inverse(x, bits):
    """arctan(1/x) for integer x >= 2 bracketed by consecutive partial sums."""
    eps = Fraction(1, 1 << (bits + 8))
    total = Fraction(0)
    j = 0
    while True:
        term = Fraction(1, (2 * j + 1) * x**(2 * j + 1))
        previous = total
        total = total + term if j % 2 == 0 else total - term
        if term < eps:
            return Interval(min(previous, total), max(previous, total))
        j += 1


def pi():
    """Machin: pi = 16 arctan(1/5) - 4 arctan(1/239)."""
    return 16 * _arctan_inverse(5, _bits) - 4 * _arctan_inverse(239, _bits)


def _reduce(x):
    """x - 2 pi k with k the nearest integer to x / (2 pi), as an interval."""
    two_pi = 2 * pi()
    k = round(x / two_pi.mid)
    return Interval(x) - k * two_pi


def _cos_point(x):
    return _taylor(_reduce(x), (1, 0, -1, 0))


def _sin_point(x):
    return _taylor(_reduce(x), (0, 1, 0, -1))


def _lipschitz_trig(interval, point):
    """f(mid) widened by the radius; sin and cos are 1-Lipschitz."""
    centre = point(interval.mid)
    radius = interval.width / 2
    lo = max(centre.lo - radius, Fraction(-1))
    hi = min(centre.hi + radius, Fraction(1))
    return Interval.rounded(lo, hi)


class ComplexInterval:
    """Rectangle re + i im of two real intervals."""
    __slots__ = ('re', 'im')

    def __init__(self, re, im=0):
        object.__setattr__(self, 're', _coerce(re))
        object.__setattr__(self, 'im', _coerce(im))

    def __setattr__(self, name, value):
        raise AttributeError('ComplexInterval is immutable')

    def __reduce__(self):
        return (ComplexInterval, (self.re, self.im))

    @classmethod
    def expi(cls, angle):
        """cos(angle) + i sin(angle)."""
        angle = _coerce(angle)
        return cls(angle.cos(), angle.sin())

    def __add__(self, other):
        other = _coerce_complex(other)
        return ComplexInterval(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexInterval(-self.re, -self.im)

    def __sub__(self, other):
        other = _coerce_complex(other)
        return ComplexInterval(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce_complex(other) - self

    def __mul__(self, other):
        if not isinstance(other, ComplexInterval):
            other = _coerce(other)
            return ComplexInterval(self.re * other, self.im * other)
        return ComplexInterval(self.re * other.re - self.im * other.im,
                               self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return ComplexInterval(1) / self**-e
        result = ComplexInterval(1)
        for _ in range(e):
            result = result * self
        return result

    def conjugate(self):
        return ComplexInterval(self.re, -self.im)

    def norm(self):
        """|z|^2."""
        return self.re.sqr() + self.im.sqr()

    def __abs__(self):
        return self.norm().sqrt()

    def __truediv__(self, other):
        if not isinstance(other, ComplexInterval):
            other = _coerce(other)
            return ComplexInterval(self.re / other, self.im / other)
        scale = other.norm()
        product = self * other.conjugate()
        return ComplexInterval(product.re / scale, product.im / scale)

    def __repr__(self):
        return f'ComplexInterval({self.re}, {self.im})'


def _coerce_complex(value):
    if isinstance(value, ComplexInterval):
        return value
    return ComplexInterval(value)


def horner(coeffs, x, shift=0):
    """sum_j coeffs[j] x^(j + shift) for a ComplexInterval x; coeffs are exact."""
    acc = ComplexInterval(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    if shift:
        acc = acc * x**shift
    return acc


_EXPR = re.compile(r'^exp\((?P<arg>[-+0-9/ ]+)\)$')


def enclose_constant(expr):
    """
    Enclosure of 'pi', 't' = exp(-pi sqrt(2) / 4), 's' = exp(-pi / 5) or
    'exp(r)' for a rational r written as an integer or a fraction.
    """
    if isinstance(expr, (int, Fraction)):
        return _exp_point(Fraction(expr))
    expr = expr.strip()
    if expr == 'pi':
        return pi()
    if expr == 't':
        return (-(pi() * Interval(2).sqrt()) / 4).exp()
    if expr == 's':
        return (-pi() / 5).exp()
    match = _EXPR.match(expr)
    if match:
        return _exp_point(Fraction(match.group('arg').replace(' ', '')))
    raise ValueError(f'unknown constant expression {expr!r}')
