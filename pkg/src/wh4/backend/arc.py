"""
Evaluation of basis elements on the lower boundary arc z = -1/4 + e^{i theta}/4
of the fundamental domain, where q = e^{2 pi i z} has |q| = e^{-(pi/2) sin theta}.

e^{ik theta/2} f(z) is real on the arc, and for f_{k,m} the weighted value
e^{ik theta/2} e^{-(pi m/2) sin theta} f_{k,m}(z) stays close to
2 cos(k theta/2 + pi m/2 - (pi m/2) cos theta). Sign changes of the weighted
value therefore count zeros on the arc.

Tail estimates here are heuristic; rigorous bounds live in certify.
"""
import logging
from collections import namedtuple
from fractions import Fraction
from functools import partial
from math import isqrt
from multiprocessing import Pool, cpu_count

import mpmath
import numpy as np
from tqdm import tqdm

from .basis import make_element
from .errors import NonMonotonicPsi, TailNotConverged
from .forms import hauptmodul
from .polynomial import isolate_roots, sturm_count

log = logging.getLogger(__name__)

DEFAULT_BITS = 256
MAX_BITS = 2048
# consecutive negligible terms that end a summation
SETTLE_TERMS = 3
TAIL_FACTOR = 8
# Faber roots are not chased closer than 2^-20 to theta = 0 or pi
CUSP_GAP_BITS = -20

ArcRoot = namedtuple('ArcRoot', ['x', 'theta', 'in_window'])


class ArcSample(
        namedtuple('ArcSample', [
            'theta', 'weighted_value', 'imag_residual', 'cosine_target',
            'tail_estimate'
        ])):
    __slots__ = ()

    def to_csv_row(self):
        return [mpmath.nstr(value, 20) for value in self]


class ZeroCountReport(
        namedtuple('ZeroCountReport', [
            'family', 'k', 'm', 'theta_lo', 'theta_hi', 'samples',
            'sign_changes', 'theorem_bound', 'max_deviation', 'arc_samples'
        ])):
    __slots__ = ()

    @property
    def satisfied(self):
        return self.sign_changes >= self.theorem_bound

    def to_json(self):
        return {
            'family': self.family,
            'k': self.k,
            'm': self.m,
            'theta_window': [float(self.theta_lo), float(self.theta_hi)],
            'samples': self.samples,
            'sign_changes': self.sign_changes,
            'theorem_bound': self.theorem_bound,
            'max_deviation': self.max_deviation,
            'satisfied': self.satisfied
        }


def theorem_bound(k, m):
    """floor((sqrt(2)/2) m + k/4), exactly: floor((k + floor(2 sqrt(2) m)) / 4)."""
    root = isqrt(8 * m * m)
    if m >= 0:
        scaled = root
    else:
        scaled = -root if root * root == 8 * m * m else -(root + 1)
    return (k + scaled) // 4


def arc_point(theta):
    """q at z = -1/4 + e^{i theta}/4 in the current mpmath precision."""
    half_pi = mpmath.pi / 2
    return mpmath.exp(-half_pi * mpmath.sin(theta)) * mpmath.expj(
        half_pi * (mpmath.cos(theta) - 1))


def _mpf(c):
    return mpmath.mpf(c.numerator) / c.denominator


def series_sum(series, q, tolerance_bits):
    """
    sum a_n q^n over the known range of the series, stopped once SETTLE_TERMS
    consecutive nonzero terms fall below 2^{-tolerance_bits/2} times the largest partial
    sum seen. Returns the sum and TAIL_FACTOR times the last term's magnitude.

    A series whose nonzero terms all sit in the first half of its known range
    is taken as settled with no tail.
    """
    threshold = mpmath.mpf(2)**(-(tolerance_bits // 2))
    power = q**series.lead
    total = mpmath.mpc(0)
    scale = mpmath.mpf(0)
    settled = 0
    last_nonzero = -1
    for i, c in enumerate(series.coeffs):
        if c:
            last_nonzero = i
            term = _mpf(c) * power
            total += term
            scale = max(scale, abs(total))
            if abs(term) <= threshold * scale:
                settled += 1
                if settled >= SETTLE_TERMS:
                    return total, TAIL_FACTOR * abs(term)
            else:
                settled = 0
        power *= q
    known = len(series.coeffs)
    if known >= 2 * SETTLE_TERMS and known >= 2 * (last_nonzero + 1):
        log.debug(f'Series vanishes on q^{series.lead + last_nonzero + 1} '
                  f'.. q^{series.prec - 1}; no tail.')
        return total, mpmath.mpf(0)
    raise TailNotConverged(
        f'{known} terms do not settle at |q| = '
        f'{mpmath.nstr(abs(q), 6)} for a tolerance of 2^-{tolerance_bits // 2}')


def cosine_target(k, m, theta):
    """2 cos(k theta/2 + pi m/2 - (pi m/2) cos theta)."""
    half_pi_m = mpmath.pi * m / 2
    return 2 * mpmath.cos(k * theta / 2 + half_pi_m -
                          half_pi_m * mpmath.cos(theta))


def _check_theta(theta):
    if not 0 < theta < mpmath.pi:
        raise ValueError(f'theta must lie in (0, pi), got {theta}')


def eval_on_arc(element, theta, bits=DEFAULT_BITS, tolerance_bits=None):
    """tolerance_bits, by default bits, sets the tail threshold; bits the working precision."""
    if bits < 64:
        raise ValueError(f'bits must be at least 64, got {bits}')
    with mpmath.workprec(bits):
        theta = mpmath.mpf(theta)
        _check_theta(theta)
        value, tail = series_sum(element.series, arc_point(theta),
                                 tolerance_bits or bits)
        weight = mpmath.expj(element.weight * theta / 2) * mpmath.exp(
            -mpmath.pi * element.pole / 2 * mpmath.sin(theta))
        weighted = weight * value
        return ArcSample(theta=+theta,
                         weighted_value=+weighted.real,
                         imag_residual=abs(weighted.imag),
                         cosine_target=cosine_target(element.weight,
                                                     element.pole, theta),
                         tail_estimate=tail * abs(weight))


def initial_terms(m, terms=64):
    return max(terms, 16 * (abs(m) + 4))


def sample_arc(family, k, m, theta, bits=DEFAULT_BITS, max_bits=MAX_BITS,
               terms=64):
    """
    eval_on_arc of the element built with enough terms. On TailNotConverged the
    working precision and the terms double until bits passes max_bits; the
    tolerance stays at the requested bits.
    """
    tolerance = bits
    terms = initial_terms(m, terms)
    while True:
        element = make_element(family, k, m, -m + terms)
        try:
            return eval_on_arc(element, theta, bits, tolerance)
        except TailNotConverged:
            if 2 * bits > max_bits:
                raise
            log.debug(f'Retrying theta = {mpmath.nstr(theta, 8)} with '
                      f'{2 * bits} bits and {2 * terms} terms.')
            bits, terms = 2 * bits, 2 * terms


def psi_on_arc(theta, bits=DEFAULT_BITS, max_bits=MAX_BITS, terms=64):
    """psi_{1/2} at z = -1/4 + e^{i theta}/4; real up to the returned residual."""
    tolerance = bits
    while True:
        try:
            with mpmath.workprec(bits):
                theta = mpmath.mpf(theta)
                _check_theta(theta)
                value, tail = series_sum(hauptmodul('half', terms),
                                         arc_point(theta), tolerance)
                return +value.real, abs(value.imag) + tail
        except TailNotConverged:
            if 2 * bits > max_bits:
                raise
            bits, terms = 2 * bits, 2 * terms


def _theta_grid(theta_lo, theta_hi, samples, bits):
    with mpmath.workprec(bits):
        return [+t for t in mpmath.linspace(mpmath.mpf(theta_lo),
                                            mpmath.mpf(theta_hi), samples)]


class ArcScanner():
    """Evaluates one element at every theta of a grid in a process pool."""

    def __init__(self, family, k, m, thetas, bits=DEFAULT_BITS,
                 max_bits=MAX_BITS, terms=64, number_of_processes=None):
        self.thetas = thetas
        self.number_of_processes = number_of_processes
        if not self.number_of_processes:
            self.number_of_processes = cpu_count()
        sample_func = partial(_sample_worker,
                              family=family,
                              k=k,
                              m=m,
                              bits=bits,
                              max_bits=max_bits,
                              terms=terms)
        self.pool = Pool(processes=self.number_of_processes)
        self.samples = self.pool.imap(sample_func, self.thetas)

    def __len__(self):
        return len(self.thetas)

    def __iter__(self):
        return self

    def __next__(self):
        try:
            return next(self.samples)

        except StopIteration:
            self.pool.close()
            self.pool.join()
            raise StopIteration

        except Exception:
            self.pool.terminate()
            raise


def _sample_worker(theta, family, k, m, bits, max_bits, terms):
    return sample_arc(family, k, m, theta, bits, max_bits, terms)


def count_sign_changes(values, bars):
    """Sign changes among the samples whose magnitude exceeds their error bar."""
    values = np.asarray(values, dtype=float)
    clear = np.abs(values) > np.asarray(bars, dtype=float)
    signs = np.sign(values[clear])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def scan_arc(k, m, theta_lo, theta_hi, samples, bits=DEFAULT_BITS,
             family='f', max_bits=MAX_BITS, terms=64,
             number_of_processes=None):
    if family not in ('f', 'g'):
        raise ValueError(f'arc scans cover the f and g families, got {family!r}')
    if samples < 2:
        raise ValueError(f'at least 2 samples are needed, got {samples}')
    if not 0 < theta_lo < theta_hi < mpmath.pi:
        raise ValueError(
            f'window ({theta_lo}, {theta_hi}) must lie inside (0, pi)')
    # build the element once so an unconstructible one fails before the pool starts
    make_element(family, k, m, -m + initial_terms(m, terms))
    thetas = _theta_grid(theta_lo, theta_hi, samples, bits)
    scanner = ArcScanner(family, k, m, thetas, bits, max_bits, terms,
                         number_of_processes)
    arc_samples = list(
        tqdm(scanner,
             desc=f'{family}_{{{k},{m}}} on the arc',
             total=len(scanner),
             disable=log.getEffectiveLevel() >= logging.ERROR))
    values = np.array([float(s.weighted_value) for s in arc_samples])
    bars = np.array(
        [float(s.imag_residual + s.tail_estimate) for s in arc_samples])
    targets = np.array([float(s.cosine_target) for s in arc_samples])
    changes = count_sign_changes(values, bars)
    report = ZeroCountReport(family=family,
                             k=k,
                             m=m,
                             theta_lo=thetas[0],
                             theta_hi=thetas[-1],
                             samples=samples,
                             sign_changes=changes,
                             theorem_bound=theorem_bound(k, m),
                             max_deviation=float(
                                 np.max(np.abs(values - targets))),
                             arc_samples=tuple(arc_samples))
    level = logging.INFO if report.satisfied else logging.WARNING
    log.log(level, f'{family}_{{{k},{m}}}: {changes} sign changes, '
            f'bound {report.theorem_bound}.')
    return report


def psi_from_thetas(theta, bits=DEFAULT_BITS):
    """
    psi_{1/2} = theta^4 / F = 16 (theta_3 / theta_2)^4 at nome q. The theta
    series converge on the whole open arc, the q-expansion of psi only away
    from its ends.
    """
    with mpmath.workprec(bits):
        theta = mpmath.mpf(theta)
        _check_theta(theta)
        q = arc_point(theta)
        value = 16 * (mpmath.jtheta(3, 0, q) / mpmath.jtheta(2, 0, q))**4
        return +value.real


def psi_profile(samples, bits=DEFAULT_BITS):
    """
    Interior grid i pi / (samples + 1) of the open arc and psi_{1/2} along it;
    raises NonMonotonicPsi unless strictly decreasing.
    """
    with mpmath.workprec(bits):
        thetas = [mpmath.pi * i / (samples + 1) for i in range(1, samples + 1)]
    values = [psi_from_thetas(theta, bits) for theta in thetas]
    steps = np.diff(np.array([float(v) for v in values]))
    if not np.all(steps < 0):
        at = int(np.argmax(steps >= 0))
        raise NonMonotonicPsi(
            f'psi_1/2 does not decrease along the arc near theta = '
            f'{mpmath.nstr(thetas[at], 8)}')
    return thetas, values


def _fraction(x):
    return Fraction(mpmath.nstr(x, 40, strip_zeros=False))


def psi_window(theta_lo, theta_hi, bits=DEFAULT_BITS, terms=64):
    """[psi(theta_hi), psi(theta_lo)] as rationals: the image of the arc window."""
    lo = psi_on_arc(theta_hi, bits, terms=terms)[0]
    hi = psi_on_arc(theta_lo, bits, terms=terms)[0]
    with mpmath.workprec(bits):
        return _fraction(lo), _fraction(hi)


def sturm_window_count(poly, theta_lo, theta_hi, bits=DEFAULT_BITS, terms=64):
    """Roots of the Faber polynomial in the psi-image of the arc window."""
    lo, hi = psi_window(theta_lo, theta_hi, bits, terms)
    return sturm_count(poly, lo, hi)


def _bracket(target, thetas, values, bits):
    """
    [lo, hi] with psi(lo) > target >= psi(hi). Past the ends of the profile the
    gap to the cusp is halved; None once it drops below 2^CUSP_GAP_BITS.
    """
    closest = mpmath.mpf(2)**CUSP_GAP_BITS
    if target > values[0]:
        lo, hi = thetas[0] / 2, thetas[0]
        while psi_from_thetas(lo, bits) <= target:
            if lo < closest:
                return None
            lo, hi = lo / 2, lo
        return lo, hi
    if target <= values[-1]:
        gap = (mpmath.pi - thetas[-1]) / 2
        lo, hi = thetas[-1], mpmath.pi - gap
        while psi_from_thetas(hi, bits) > target:
            if gap < closest:
                return None
            gap = gap / 2
            lo, hi = hi, mpmath.pi - gap
        return lo, hi
    j = next(i for i in range(1, len(values)) if values[i] <= target)
    return thetas[j - 1], thetas[j]


def faber_roots_to_theta(poly, bits=DEFAULT_BITS, theta_lo=None,
                         theta_hi=None, samples=200):
    """
    ArcRoot(x, theta, in_window) for each root x of poly in (0, 16), where
    psi_{1/2}(theta) = x on the open arc, found by bisection. psi runs from 16
    to 0 over (0, pi), so every such root has a theta. A window is optional:
    roots whose theta falls outside it are kept, flagged and logged. A root too
    close to 0 or 16 to be bracketed before the cusps gets theta None.
    """
    if (theta_lo is None) != (theta_hi is None):
        raise ValueError('give both ends of the theta window or neither')
    if samples < 2:
        raise ValueError(f'at least 2 samples are needed, got {samples}')
    roots = [(a + b) / 2 for a, b in isolate_roots(poly, 0, 16)]
    if not roots:
        return []
    thetas, values = psi_profile(samples, bits)
    located = []
    with mpmath.workprec(bits):
        tolerance = mpmath.mpf(2)**(-(bits // 2))
        for x in roots:
            target = _mpf(x)
            bracket = _bracket(target, thetas, values, bits)
            if bracket is None:
                log.warning(f'root {float(x)} is too close to a cusp to be '
                            'bracketed on the arc.')
                located.append(ArcRoot(x, None, False))
                continue
            lo, hi = bracket
            while hi - lo > tolerance:
                mid = (lo + hi) / 2
                if psi_from_thetas(mid, bits) > target:
                    lo = mid
                else:
                    hi = mid
            theta = (lo + hi) / 2
            in_window = theta_lo is None or theta_lo <= theta <= theta_hi
            if not in_window:
                log.warning(f'root {float(x)} sits at theta = '
                            f'{mpmath.nstr(theta, 8)}, outside the window.')
            located.append(ArcRoot(x, theta, in_window))
    inside = sum(root.in_window for root in located)
    log.info(f'Located {len(located)} root(s) on the arc, {inside} in the window.')
    return located
