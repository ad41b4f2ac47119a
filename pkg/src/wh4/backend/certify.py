"""
Interval certification of the constants that bound the error of the cosine
approximation on the lower boundary arc, and of the inequality chain giving
the thresholds m >= 4 ell + 16 and m >= 5 |ell| + 16.

z runs over the arc -1/4 + e^{i theta}/4 with theta in [pi/4, 3pi/4], where
|q| <= t = exp(-pi sqrt(2) / 4); tau runs over u + i/10 with u in [-1/2, 1/2],
where |r| = s = exp(-pi / 5). Every form is split into its truncation at
exponent 50 and a tail.
"""
import logging
from collections import namedtuple
from decimal import ROUND_CEILING, ROUND_FLOOR, Context, Decimal
from fractions import Fraction
from functools import lru_cache, partial
from math import ceil, floor
from multiprocessing import Pool, cpu_count

from tqdm import tqdm

from .errors import (ConditionFailedAt, DivergentTail, GridTooCoarse,
                     UncertifiedConstants)
from .forms import eisenstein_F, hauptmodul, theta4
from .interval import (ComplexInterval, Interval, enclose_constant,
                       get_precision, horner, pi, set_precision)

log = logging.getLogger(__name__)

TRUNCATION = 50
THETA_STEP = Fraction(1, 1000)
U_STEP = Fraction(1, 2000)
MAX_REFINEMENT = 12

# u-pieces of [-1/2, 0]; [0, 1/2] follows by |psi(-u + i/10)| = |psi(u + i/10)|
PIECES = (
    ('edge', Fraction('-0.5'), Fraction('-0.3880')),
    ('conditions', Fraction('-0.3880'), Fraction('-0.2001')),
    ('centre', Fraction('-0.2001'), Fraction(0)),
)

Claim = namedtuple('Claim', ['value', 'relation', 'required', 'note'])


def _claim(value, relation='<=', required=True, note=''):
    if isinstance(value, tuple):
        value = tuple(Fraction(v) for v in value)
    else:
        value = Fraction(value)
    return Claim(value, relation, required, note)


CLAIMS = {
    't': _claim(('0.3292', '0.3294'), 'in'),
    's': _claim(('0.5334', '0.5336'), 'in'),
    'tail F(z)': _claim('1.01e-21'),
    'tail F(tau)': _claim('7.204e-11'),
    'sup |F~(z)|': _claim('0.49945'),
    'sup |F(z)|': _claim('0.4995'),
    'sup |F(tau)|': _claim('1.563'),
    'sup |theta^4(tau)|': _claim('25.01'),
    'sup |theta^4(z)|': _claim('8.009'),
    'sup |dF/dtheta|': _claim('1.42'),
    'sup |dF/dtau|': _claim('31.26'),
    'min |F~(z)| on grid': _claim('0.1741', '>=', False, 'grid values only'),
    'inf |F(z)|': _claim('0.1733', '>='),
    'min |F~(tau)| on grid': _claim('0.1229', '>=', False, 'grid values only'),
    'inf |F(tau)|': _claim('0.115', '>='),
    'sup |psi~(tau)|': _claim('62.11', required=False),
    'sup |RF(tau)/F(tau)|': _claim('6.265e-10', required=False),
    'sup |theta~^4 - psi~ F~|(tau)': _claim('2.675e-6', required=False),
    'tail theta^4(tau)': _claim('1.729e-9', required=False),
    'tail psi(tau)': _claim('2.3315e-5'),
    'tail psi(z)': _claim('1.254e-16'),
    'sup |d psi~/du|': _claim('2008.64'),
    'sup |d psi~/dtheta|': _claim('36.59'),
    'inf psi(z)': _claim('0.1278', '>='),
    'sup psi(z)': _claim('15.8723'),
    'sup |Re psi(tau)|, edge': _claim('0.003216', required=False),
    'min |psi(tau) - psi(z)|, edge': _claim('0.12458', '>=', False),
    'inf |Re psi(tau)|, centre': _claim('15.9967', '>=', False),
    'min |psi(tau) - psi(z)|, centre': _claim('0.1244', '>=', False),
    'quotient integral, edge': _claim('28.7631'),
    'quotient integral, conditions': _claim('0.7516'),
    'quotient integral, centre': _claim('51.4621'),
    'quotient integral': _claim('80.9768'),
    'quotient integral, chain display': _claim(
        '80.9313', required=False,
        note='unreconciled with the piecewise total 80.9768'),
    'sup |theta^4(tau) - 16F(tau)|': _claim('50.02'),
    'sup |F(z)/F(tau)|': _claim('4.344'),
    'sup |F(tau)/F(z)|': _claim('9.02'),
    'decay factor': _claim('0.6173'),
}


def _decimal(x, rounding):
    context = Context(prec=20, rounding=rounding)
    return str(context.divide(Decimal(x.numerator), Decimal(x.denominator)))


class CertificateReport(
        namedtuple('CertificateReport',
                   ['name', 'claimed', 'certified', 'relation', 'required',
                    'note'])):
    __slots__ = ()

    @property
    def passed(self):
        certified = self.certified
        if self.relation == '<=':
            return certified.hi <= self.claimed
        if self.relation == '>=':
            return certified.lo >= self.claimed
        lo, hi = self.claimed
        return lo < certified.lo and certified.hi < hi

    def to_json(self):
        if self.relation == 'in':
            claimed = [str(float(v)) for v in self.claimed]
        else:
            claimed = str(float(self.claimed))
        return {
            'name': self.name,
            'claimed': claimed,
            'certified_lo': _decimal(self.certified.lo, ROUND_FLOOR),
            'certified_hi': _decimal(self.certified.hi, ROUND_CEILING),
            'relation': self.relation,
            'pass': self.passed,
            'required': self.required,
            'note': self.note
        }


def report(name, certified, note=None):
    claim = CLAIMS[name]
    if not isinstance(certified, Interval):
        certified = Interval(certified)
    result = CertificateReport(name=name,
                               claimed=claim.value,
                               certified=certified,
                               relation=claim.relation,
                               required=claim.required,
                               note=note if note is not None else claim.note)
    level = logging.INFO if result.passed or not result.required else logging.ERROR
    log.log(level, f'{name}: certified {certified} against {claim.relation} '
            f'{claim.value}: {"pass" if result.passed else "FAIL"}')
    return result


@lru_cache(maxsize=4)
def _constants(bits):
    p = pi()
    return {
        'pi': p,
        't': enclose_constant('t'),
        's': enclose_constant('s'),
        # smallest |q| on the arc window, at theta = pi/2
        'x_min': (-(p / 2)).exp(),
        'sqrt2': Interval(2).sqrt(),
    }


def constant(name):
    return _constants(get_precision())[name]


def modulus_range(line):
    """Smallest and largest |q| on the arc window or on the horizontal line."""
    if line == 'arc':
        return constant('x_min'), constant('t')
    return constant('s'), constant('s')


def arc_q(theta):
    """q = e^{2 pi i z} at z = -1/4 + e^{i theta}/4."""
    half_pi = constant('pi') / 2
    modulus = (-(half_pi * theta.sin())).exp()
    return ComplexInterval.expi(half_pi * (theta.cos() - 1)) * modulus


def tau_r(u):
    """r = e^{2 pi i tau} at tau = u + i/10."""
    return ComplexInterval.expi(2 * constant('pi') * u) * constant('s')


def _point(line, centre):
    return arc_q(centre) if line == 'arc' else tau_r(centre)


_SERIES = {
    'F': eisenstein_F,
    'theta4': theta4,
    'psi': lambda prec: hauptmodul('half', prec),
}


@lru_cache(maxsize=None)
def truncation(name, n=TRUNCATION):
    """(coefficients, shift) of the truncation sum_{j <= n} a(j) q^j."""
    series = _SERIES[name](n + 1)
    shift = series.lead
    return tuple(series[j] for j in range(shift, n + 1)), shift


def _derivative_coeffs(coeffs, shift):
    return tuple((j + shift) * c for j, c in enumerate(coeffs))


@lru_cache(maxsize=None)
def mismatch(n=TRUNCATION):
    """theta~^4 - psi~ F~ as (coefficients, shift); its support starts at n."""
    psi, psi_shift = truncation('psi', n)
    f, f_shift = truncation('F', n)
    th, th_shift = truncation('theta4', n)
    terms = {}
    for j, c in enumerate(th):
        terms[j + th_shift] = terms.get(j + th_shift, 0) + c
    for i, a in enumerate(psi):
        if not a:
            continue
        for j, b in enumerate(f):
            if b:
                e = i + psi_shift + j + f_shift
                terms[e] = terms.get(e, 0) - a * b
    support = [e for e, c in terms.items() if c]
    lo, hi = min(support), max(support)
    return tuple(Fraction(terms.get(e, 0)) for e in range(lo, hi + 1)), lo


def laurent_sup(coeffs, shift, x_lo, x_hi):
    """
    sup of sum |c_j| x^(j + shift) over x in [x_lo, x_hi], x > 0. Every term is
    convex in x, so the supremum sits at an endpoint.
    """

    def at(x):
        total = Interval(0)
        for j, c in enumerate(coeffs):
            if c:
                total = total + abs(c) * x**(j + shift)
        return total

    a = at(x_lo)
    b = a if x_hi == x_lo else at(x_hi)
    return Interval(max(a.lo, b.lo), max(a.hi, b.hi))


# x * A_j(x) / (1 - x)^(j + 1) = sum_{k >= 1} k^j x^k, A_j the Eulerian polynomials
_EULERIAN = {
    0: (1, ),
    1: (1, ),
    2: (1, 1),
    3: (1, 4, 1),
    4: (1, 11, 11, 1),
}


def _power_tail_point(n, x, j):
    x = Interval(x)
    eulerian = Interval(0)
    for i, c in enumerate(_EULERIAN[j]):
        eulerian = eulerian + c * x**i
    closed = x * eulerian / (1 - x)**(j + 1)
    partial_sum = Interval(0)
    power = Interval(1)
    for k in range(1, n + 1):
        power = power * x
        partial_sum = partial_sum + k**j * power
    return closed - partial_sum


def power_tail(n, x, j):
    """sum_{k > n} k^j x^k for 0 <= x < 1; increasing in x, so bounded endpoint-wise."""
    if not isinstance(x, Interval):
        x = Interval(x)
    if x.hi >= 1:
        raise DivergentTail(f'|q| <= {float(x.hi)} does not bound a convergent tail')
    if x.lo < 0:
        raise ValueError(f'a modulus cannot be negative: {x}')
    if j not in _EULERIAN:
        raise ValueError(f'no closed form for the moment {j}')
    return Interval(
        _power_tail_point(n, x.lo, j).lo,
        _power_tail_point(n, x.hi, j).hi)


def sigma_tail_bound(N, t):
    """sum_{n > N} (n + n^2) t^n, bounding the tail of F since sigma(n) <= n + n^2."""
    if N < 1:
        raise ValueError(f'truncation must be at least 1, got {N}')
    return power_tail(N, t, 1) + power_tail(N, t, 2)


def derivative_tail_bound(N, t):
    """sum_{n > N} (n^2 + n^3) t^n, bounding the tail of n sigma(n) t^n."""
    return power_tail(N, t, 2) + power_tail(N, t, 3)


SUP_FORMS = {
    'F_on_z': ('F', 't', 1, 'sup |F(z)|'),
    'F_on_tau': ('F', 's', 1, 'sup |F(tau)|'),
    'theta4_on_z': ('theta4', 't', 8, 'sup |theta^4(z)|'),
    'theta4_on_tau': ('theta4', 's', 8, 'sup |theta^4(tau)|'),
}


def sup_bound(form):
    """Triangle inequality on the truncation plus the tail; r_4(n) <= 8 sigma(n)."""
    name, radius, tail_factor, _ = SUP_FORMS[form]
    x = constant(radius)
    coeffs, shift = truncation(name)
    return (laurent_sup(coeffs, shift, x, x) +
            tail_factor * sigma_tail_bound(TRUNCATION, x))


def certify_sup(form):
    if form not in SUP_FORMS:
        raise ValueError(f'unknown form {form!r}')
    return report(SUP_FORMS[form][3], sup_bound(form))


def derivative_bound(name, line):
    """
    Bound on |d/dtheta| (arc) or |d/dtau| (line) of the form, the weighted sum
    sum n |a(n)| x^n at the largest |q| of the region. Each n keeps its sign, so
    the q^-1 term of psi is subtracted. For F the tail is included.
    """
    coeffs, shift = truncation(name)
    x = modulus_range(line)[1]
    total = Interval(0)
    for j, c in enumerate(coeffs):
        n = j + shift
        if c and n:
            total = total + n * abs(c) * x**n
    if name == 'F':
        total = total + derivative_tail_bound(TRUNCATION, x)
    factor = constant('pi') / 2 if line == 'arc' else 2 * constant('pi')
    return factor * total


def evaluate(name, x):
    coeffs, shift = truncation(name)
    return horner(coeffs, x, shift)


def slope(name, line, span):
    """Enclosure of the derivative of the truncation over the interval span."""
    coeffs, shift = truncation(name)
    x = _point(line, span)
    inner = horner(_derivative_coeffs(coeffs, shift), x, shift)
    if line == 'arc':
        # d(2 pi i z)/dtheta = -(pi/2) e^{i theta}
        return ComplexInterval.expi(span) * inner * (-(constant('pi') / 2))
    outer = inner * (2 * constant('pi'))
    return ComplexInterval(-outer.im, outer.re)


def cell_enclosure(name, line, centre, radius):
    """Mean value form: value at the centre plus radius times the slope over the cell."""
    value = evaluate(name, _point(line, centre))
    span = Interval(centre.lo - radius, centre.hi + radius)
    return value + slope(name, line, span) * Interval(-radius, radius)


def arc_cells(step=THETA_STEP):
    """Points pi/4 + n step up to 3pi/4 and the endpoint 3pi/4, each covering radius step/2."""
    p = constant('pi')
    start = p / 4
    count = floor((p.lo / 2) / step)
    cells = [(start + n * step, step / 2, 0) for n in range(count + 1)]
    cells.append((3 * p / 4, step / 2, 0))
    return cells


def line_cells(lo, hi, step=U_STEP):
    """Equal cells of width at most step covering [lo, hi]."""
    count = max(ceil((hi - lo) / step), 1)
    width = (hi - lo) / count
    return [(Interval(lo + (i + Fraction(1, 2)) * width), width / 2, 0)
            for i in range(count)]


def arc_window():
    """Outer rational bounds of the arc window [pi/4, 3pi/4]."""
    p = constant('pi')
    return (p / 4).lo, (3 * p / 4).hi


def _children(cell, window=None):
    """Halves of the cell. With a window each half is cut down to it and empty halves are dropped."""
    centre, radius, depth = cell
    half = radius / 2
    children = [(centre - half, half, depth + 1),
                (centre + half, half, depth + 1)]
    if window is None:
        return children
    lo, hi = window
    clamped = []
    for child_centre, child_radius, child_depth in children:
        a = max((child_centre - child_radius).lo, lo)
        b = min((child_centre + child_radius).hi, hi)
        if a < b:
            clamped.append((Interval((a + b) / 2), (b - a) / 2, child_depth))
    return clamped


class GridCertifier():
    """Certifies grid cells in a process pool; iteration yields one result per cell in order."""

    def __init__(self, worker, cells, number_of_processes=None, **kwargs):
        self.cells = list(cells)
        self.number_of_processes = number_of_processes
        if not self.number_of_processes:
            self.number_of_processes = cpu_count()
        cell_func = partial(worker, **kwargs)
        self.pool = Pool(processes=self.number_of_processes,
                         initializer=set_precision,
                         initargs=(get_precision(), ))
        self.results = self.pool.imap(cell_func, self.cells)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return self

    def __next__(self):
        try:
            return next(self.results)

        except StopIteration:
            self.pool.close()
            self.pool.join()
            raise StopIteration

        except Exception:
            self.pool.terminate()
            raise


def _run_grid(worker, cells, desc, number_of_processes=None, **kwargs):
    certifier = GridCertifier(worker,
                              cells,
                              number_of_processes=number_of_processes,
                              **kwargs)
    return list(
        tqdm(certifier,
             desc=desc,
             total=len(certifier),
             disable=log.getEffectiveLevel() >= logging.ERROR))


def _inf_cell(cell, line, name, lipschitz, tail, target, max_refinement,
              window=None):
    """(|truncation| at the centre, certified lower bound of |form| on the cell)."""
    centre, radius, depth = cell
    value = abs(evaluate(name, _point(line, centre))).lo
    lower = value - lipschitz * radius - tail
    if lower >= target or depth >= max_refinement:
        return value, lower
    return value, min(
        _inf_cell(child, line, name, lipschitz, tail, target, max_refinement,
                  window)[1]
        for child in _children(cell, window))


INF_FORMS = {
    'F_on_z': ('arc', 'inf |F(z)|', 'min |F~(z)| on grid', 'sup |dF/dtheta|',
               'tail F(z)'),
    'F_on_tau': ('tau', 'inf |F(tau)|', 'min |F~(tau)| on grid',
                 'sup |dF/dtau|', 'tail F(tau)'),
}


def inf_grid(form,
             number_of_processes=None,
             max_refinement=MAX_REFINEMENT,
             theta_step=THETA_STEP,
             u_step=U_STEP):
    """
    Grid minimum of the truncation and certified lower bound of |F| on the
    window, together with the derivative bound and the tail used.
    """
    line, inf_name, _, _, _ = INF_FORMS[form]
    lipschitz = derivative_bound('F', line)
    tail = sigma_tail_bound(TRUNCATION, modulus_range(line)[1])
    window = None
    if line == 'arc':
        cells = arc_cells(theta_step)
        window = arc_window()
    else:
        # |F(-u + i/10)| = |F(u + i/10)|, so u <= 0 suffices
        cells = line_cells(Fraction(-1, 2), Fraction(0), u_step)
    results = _run_grid(_inf_cell,
                        cells,
                        inf_name,
                        number_of_processes=number_of_processes,
                        line=line,
                        name='F',
                        lipschitz=lipschitz.hi,
                        tail=tail.hi,
                        target=CLAIMS[inf_name].value,
                        max_refinement=max_refinement,
                        window=window)
    grid_min = min(value for value, _ in results)
    lower = min(bound for _, bound in results)
    return grid_min, lower, lipschitz, tail


def certify_inf(form, **kwargs):
    if form not in INF_FORMS:
        raise ValueError(f'unknown form {form!r}')
    inf_name = INF_FORMS[form][1]
    grid_min, lower, _, _ = inf_grid(form, **kwargs)
    target = CLAIMS[inf_name].value
    if lower < target:
        raise GridTooCoarse(
            f'{inf_name}: certified minimum {float(lower)} is below {float(target)}')
    return report(inf_name,
                  Interval(lower, grid_min),
                  note=f'grid minimum {float(grid_min):.6g}')


def _claimed(name):
    """Claimed value used in place of a certified one, with a warning."""
    log.warning(f'{name}: using the claimed value {float(CLAIMS[name].value)}, '
                'not a certified one')
    return CLAIMS[name].value


def psi_tail_components(line, f_inf):
    """
    |R psi| <= |psi~| |RF / F| + (|theta~^4 - psi~ F~| + |R theta^4|) / |F|
    with |F| >= f_inf on the region.
    """
    x_lo, x_hi = modulus_range(line)
    psi = laurent_sup(*truncation('psi'), x_lo, x_hi)
    difference = laurent_sup(*mismatch(), x_lo, x_hi)
    f_tail = sigma_tail_bound(TRUNCATION, x_hi)
    theta_tail = 8 * f_tail
    inf = Interval(f_inf)
    ratio = f_tail / inf
    total = psi * ratio + (difference + theta_tail) / inf
    return {
        'psi': psi,
        'ratio': ratio,
        'mismatch': difference,
        'theta_tail': theta_tail,
        'total': total
    }


def _psi_arc_cell(cell, tail, lower_target, upper_target, max_refinement,
                  window=None):
    """Enclosure of the real value psi(z) over the cell."""
    centre, radius, depth = cell
    enclosure = cell_enclosure('psi', 'arc', centre, radius)
    real = enclosure.re + Interval(-tail, tail)
    if (real.lo >= lower_target
            and real.hi <= upper_target) or depth >= max_refinement:
        return real.lo, real.hi
    parts = [
        _psi_arc_cell(child, tail, lower_target, upper_target, max_refinement,
                      window) for child in _children(cell, window)
    ]
    return min(p[0] for p in parts), max(p[1] for p in parts)


def psi_arc_range(tail,
                  number_of_processes=None,
                  max_refinement=MAX_REFINEMENT,
                  theta_step=THETA_STEP):
    """Certified [min, max] of psi on the arc window; psi is real there."""
    results = _run_grid(_psi_arc_cell,
                        arc_cells(theta_step),
                        'psi(z)',
                        number_of_processes=number_of_processes,
                        tail=tail,
                        lower_target=CLAIMS['inf psi(z)'].value,
                        upper_target=CLAIMS['sup psi(z)'].value,
                        max_refinement=max_refinement,
                        window=arc_window())
    return min(r[0] for r in results), max(r[1] for r in results)


def certify_psi_bounds(f_inf_z=None, f_inf_tau=None, **kwargs):
    """
    Tails of psi on both regions, derivative bounds of its truncation and the
    range of psi on the arc window.
    """
    if f_inf_z is None:
        f_inf_z = _claimed('inf |F(z)|')
    if f_inf_tau is None:
        f_inf_tau = _claimed('inf |F(tau)|')
    on_tau = psi_tail_components('tau', f_inf_tau)
    on_z = psi_tail_components('arc', f_inf_z)
    lo, hi = psi_arc_range(on_z['total'].hi, **kwargs)
    return [
        report('sup |psi~(tau)|', on_tau['psi']),
        report('sup |RF(tau)/F(tau)|', on_tau['ratio']),
        report('sup |theta~^4 - psi~ F~|(tau)', on_tau['mismatch']),
        report('tail theta^4(tau)', on_tau['theta_tail']),
        report('tail psi(tau)', on_tau['total']),
        report('tail psi(z)', on_z['total']),
        report('sup |d psi~/du|', derivative_bound('psi', 'tau')),
        report('sup |d psi~/dtheta|', derivative_bound('psi', 'arc')),
        report('inf psi(z)', Interval(lo, max(lo, hi))),
        report('sup psi(z)', Interval(min(lo, hi), hi)),
    ]


CellBound = namedtuple('CellBound', ['integral', 're_mag', 're_mig', 'distance'])


def _combine(parts):
    return CellBound(integral=sum(p.integral for p in parts),
                     re_mag=max(p.re_mag for p in parts),
                     re_mig=min(p.re_mig for p in parts),
                     distance=min(p.distance for p in parts))


def _quotient_cell(cell, piece, tail, psi_lo, psi_hi, rate, max_refinement):
    """
    Bound on the integral of |psi(tau) / (psi(tau) - psi(z))| over the cell,
    uniformly in z on the arc window.
    """
    centre, radius, depth = cell
    enclosure = cell_enclosure('psi', 'tau', centre, radius)
    slack = Interval(-tail, tail)
    real, imag = enclosure.re + slack, enclosure.im + slack
    width = 2 * radius
    dx = max(psi_lo - real.hi, real.lo - psi_hi, 0)
    distance = max(dx, imag.mig())
    bound = None
    if piece == 'conditions':
        # each condition gives |psi(z)| < |psi(tau) - psi(z)|, so the quotient is below 2
        if real.hi < 0 or real.lo > 32 or imag.mig() > 16:
            bound = 2 * width
    elif distance > 0:
        bound = Interval.rounded(0, width * (1 + psi_hi / distance)).hi
    if bound is not None and (bound <= rate * width or depth >= max_refinement):
        return CellBound(bound, real.mag(), real.mig(), distance)
    if depth >= max_refinement:
        if piece == 'conditions':
            raise ConditionFailedAt(float(centre.mid))
        raise GridTooCoarse(
            f'psi(tau) meets the range of psi(z) near u = {float(centre.mid)}')
    return _combine([
        _quotient_cell(child, piece, tail, psi_lo, psi_hi, rate,
                       max_refinement) for child in _children(cell)
    ])


def quotient_pieces(tail,
                    psi_lo,
                    psi_hi,
                    number_of_processes=None,
                    max_refinement=MAX_REFINEMENT,
                    u_step=U_STEP):
    """CellBound per piece of [-1/2, 0], each integral already doubled for [0, 1/2]."""
    pieces = {}
    for piece, lo, hi in PIECES:
        claim = CLAIMS[f'quotient integral, {piece}'].value
        rate = claim / (2 * (hi - lo))
        results = _run_grid(_quotient_cell,
                            line_cells(lo, hi, u_step),
                            f'quotient, {piece}',
                            number_of_processes=number_of_processes,
                            piece=piece,
                            tail=tail,
                            psi_lo=psi_lo,
                            psi_hi=psi_hi,
                            rate=rate,
                            max_refinement=max_refinement)
        combined = _combine(results)
        pieces[piece] = combined._replace(integral=2 * combined.integral)
    return pieces


def certify_quotient_integral(tail=None, psi_lo=None, psi_hi=None, **kwargs):
    """
    Piecewise bound on the integral over u in [-1/2, 1/2] of
    |psi(tau) / (psi(tau) - psi(z))|, uniformly in z on the arc window.
    """
    if tail is None:
        tail = _claimed('tail psi(tau)')
    if psi_lo is None:
        psi_lo = _claimed('inf psi(z)')
    if psi_hi is None:
        psi_hi = _claimed('sup psi(z)')
    pieces = quotient_pieces(tail, psi_lo, psi_hi, **kwargs)
    total = sum(p.integral for p in pieces.values())
    edge, centre = pieces['edge'], pieces['centre']
    return [
        report('quotient integral, edge', Interval(0, edge.integral)),
        report('quotient integral, conditions',
               Interval(0, pieces['conditions'].integral)),
        report('quotient integral, centre', Interval(0, centre.integral)),
        report('quotient integral', Interval(0, total)),
        report('quotient integral, chain display', Interval(0, total)),
        report('sup |Re psi(tau)|, edge', Interval(0, edge.re_mag)),
        report('min |psi(tau) - psi(z)|, edge',
               Interval(edge.distance, max(edge.distance, psi_hi))),
        report('inf |Re psi(tau)|, centre',
               Interval(centre.re_mig, max(centre.re_mig, centre.re_mag))),
        report('min |psi(tau) - psi(z)|, centre',
               Interval(centre.distance, max(centre.distance, psi_hi))),
    ]


def decay_factor():
    """exp(-(pi/2)(sin theta - 2/5)) is largest at theta = pi/4, where sin theta = sqrt(2)/2."""
    exponent = -(constant('pi') / 2) * (constant('sqrt2') / 2 - Fraction(2, 5))
    return exponent.exp()


def certify_chain(sup_z=None, sup_tau=None, sup_theta4_tau=None, inf_z=None,
                  inf_tau=None):
    """The combined constants of the inequality chain, from certified endpoints."""
    sup_z = sup_z if sup_z is not None else sup_bound('F_on_z').hi
    sup_tau = sup_tau if sup_tau is not None else sup_bound('F_on_tau').hi
    if sup_theta4_tau is None:
        sup_theta4_tau = sup_bound('theta4_on_tau').hi
    inf_z = inf_z if inf_z is not None else _claimed('inf |F(z)|')
    inf_tau = inf_tau if inf_tau is not None else _claimed('inf |F(tau)|')
    return [
        report('sup |theta^4(tau) - 16F(tau)|',
               Interval(sup_theta4_tau) + 16 * Interval(sup_tau)),
        report('sup |F(z)/F(tau)|', Interval(sup_z) / Interval(inf_tau)),
        report('sup |F(tau)/F(z)|', Interval(sup_tau) / Interval(inf_z)),
        report('decay factor', decay_factor()),
    ]


def certify_constants(number_of_processes=None,
                     max_refinement=MAX_REFINEMENT,
                     theta_step=THETA_STEP,
                     u_step=U_STEP):
    """Every constant of the error bound, in dependency order."""
    grid = dict(number_of_processes=number_of_processes,
                max_refinement=max_refinement)
    reports = [
        report('t', constant('t')),
        report('s', constant('s')),
        report('tail F(z)', sigma_tail_bound(TRUNCATION, constant('t'))),
        report('tail F(tau)', sigma_tail_bound(TRUNCATION, constant('s'))),
        report('sup |F~(z)|',
               laurent_sup(*truncation('F'), constant('t'), constant('t'))),
    ]
    reports += [certify_sup(form) for form in SUP_FORMS]
    reports += [
        report('sup |dF/dtheta|', derivative_bound('F', 'arc')),
        report('sup |dF/dtau|', derivative_bound('F', 'tau')),
    ]

    lower = {}
    for form, (_, inf_name, grid_name, _, _) in INF_FORMS.items():
        grid_min, bound, _, _ = inf_grid(form,
                                         theta_step=theta_step,
                                         u_step=u_step,
                                         **grid)
        lower[form] = bound
        reports.append(report(grid_name, Interval(grid_min)))
        reports.append(report(inf_name, Interval(bound, max(bound, grid_min))))

    reports += certify_psi_bounds(f_inf_z=lower['F_on_z'],
                                  f_inf_tau=lower['F_on_tau'],
                                  theta_step=theta_step,
                                  **grid)
    by_name = {r.name: r for r in reports}
    psi_lo = by_name['inf psi(z)'].certified.lo
    psi_hi = by_name['sup psi(z)'].certified.hi
    tail = by_name['tail psi(tau)'].certified.hi
    if psi_lo <= 0:
        raise GridTooCoarse(f'psi(z) is not certified positive (lower bound {float(psi_lo)})')
    reports += certify_quotient_integral(tail=tail,
                                         psi_lo=psi_lo,
                                         psi_hi=psi_hi,
                                         u_step=u_step,
                                         **grid)
    reports += certify_chain(
        sup_z=by_name['sup |F(z)|'].certified.hi,
        sup_tau=by_name['sup |F(tau)|'].certified.hi,
        sup_theta4_tau=by_name['sup |theta^4(tau)|'].certified.hi,
        inf_z=lower['F_on_z'],
        inf_tau=lower['F_on_tau'])
    failed = [r.name for r in reports if r.required and not r.passed]
    if failed:
        log.error(f'{len(failed)} required certificate(s) failed: {failed}')
    else:
        log.info(f'All {sum(r.required for r in reports)} required certificates passed.')
    return reports


def all_passed(reports):
    return all(r.passed for r in reports if r.required)


def theorem_threshold(ell):
    """Smallest m covered by the chain: 4 ell + 16 for ell >= 0, 5 |ell| + 16 otherwise."""
    return 4 * ell + 16 if ell >= 0 else 5 * abs(ell) + 16


# constants of the inequality chain and the certificates they come from
CHAIN_CONSTANTS = {
    'decay': 'decay factor',
    'ratio_up': 'sup |F(z)/F(tau)|',
    'ratio_down': 'sup |F(tau)/F(z)|',
    'theta': 'sup |theta^4(tau) - 16F(tau)|',
    'integral': 'quotient integral',
}


def chain_constants(reports):
    """
    Certified upper bounds for the inequality chain, taken from the output of
    certify_constants or from the rows of a stored JSON report of it. Every
    required row has to have passed.
    """
    rows = [
        r.to_json() if isinstance(r, CertificateReport) else r for r in reports
    ]
    failed = [row['name'] for row in rows if row['required'] and not row['pass']]
    if failed:
        raise UncertifiedConstants(f'required certificates failed: {failed}')
    upper = {row['name']: Fraction(row['certified_hi']) for row in rows}
    missing = [name for name in CHAIN_CONSTANTS.values() if name not in upper]
    if missing:
        raise UncertifiedConstants(f'no certified value for {missing}')
    return {key: upper[name] for key, name in CHAIN_CONSTANTS.items()}


def certify_zero_bound(ell, m, constants):
    """
    decay^m * ratio^|ell| * sup|theta^4 - 16F| * quotient integral <= 2 for the
    given (ell, m), plus the two inequalities that extend the base case m = 16
    to every m >= threshold(ell).

    constants maps 'decay', 'ratio_up', 'ratio_down', 'theta' and 'integral'
    to certified upper bounds, as chain_constants returns them.
    """
    missing = sorted(set(CHAIN_CONSTANTS) - set(constants))
    if missing:
        raise UncertifiedConstants(f'no certified value for {missing}')
    decay = Interval(constants['decay'])
    ratio = Interval(
        constants['ratio_up'] if ell >= 0 else constants['ratio_down'])
    base = Interval(constants['theta']) * Interval(constants['integral'])
    threshold = theorem_threshold(ell)
    per_ell = 4 if ell >= 0 else 5

    def chain_report(name, claimed, certified, relation='<=', note=''):
        return CertificateReport(name=name,
                                 claimed=Fraction(claimed),
                                 certified=certified,
                                 relation=relation,
                                 required=True,
                                 note=note)

    reports = [
        chain_report('decay factor', CLAIMS['decay factor'].value,
                     decay_factor()),
        chain_report(f'hypothesis m >= {threshold}', threshold, Interval(m),
                     '>=', f'ell = {ell}'),
        chain_report('base case m = 16', 2, decay**16 * base),
        chain_report(f'decay^{per_ell} * ratio', 1, decay**per_ell * ratio),
        chain_report(f'bound at m = {threshold}', 2,
                     decay**threshold * ratio**abs(ell) * base),
        chain_report(f'bound at ell = {ell}, m = {m}', 2,
                     decay**m * ratio**abs(ell) * base),
    ]
    for r in reports:
        level = logging.INFO if r.passed else logging.ERROR
        log.log(level, f'{r.name}: {r.certified} {r.relation} {float(r.claimed)}: '
                f'{"pass" if r.passed else "FAIL"}')
    return reports
