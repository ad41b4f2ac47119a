from fractions import Fraction

import mpmath
import pytest

from wh4.backend.certify import (CHAIN_CONSTANTS, CLAIMS, TRUNCATION,
                                 CertificateReport, _children, _inf_cell,
                                 all_passed, arc_cells, arc_window,
                                 cell_enclosure, certify_chain,
                                 certify_constants, certify_inf,
                                 certify_psi_bounds,
                                 certify_quotient_integral, certify_sup,
                                 certify_zero_bound, chain_constants,
                                 constant, decay_factor, derivative_bound,
                                 inf_grid, laurent_sup, line_cells, mismatch,
                                 power_tail, report, sigma_tail_bound,
                                 theorem_threshold, truncation)
from wh4.backend.errors import DivergentTail, UncertifiedConstants
from wh4.backend import certify as certify_module
from wh4.backend.interval import Interval


@pytest.mark.parametrize('j', [0, 1, 2, 3, 4])
def test_power_tail_encloses_the_series(j):
    x = Fraction(1, 2)
    bound = power_tail(10, x, j)
    with mpmath.workprec(300):
        exact = mpmath.nsum(lambda k: k**j * mpmath.mpf(x)**k, [11, mpmath.inf])
        assert mpmath.mpf(bound.lo.numerator) / bound.lo.denominator <= exact
        assert exact <= mpmath.mpf(bound.hi.numerator) / bound.hi.denominator


def test_power_tail_diverges_at_one():
    with pytest.raises(DivergentTail):
        power_tail(10, Fraction(1), 1)
    with pytest.raises(DivergentTail):
        sigma_tail_bound(TRUNCATION, Interval(Fraction(1, 2), Fraction(1)))


def test_sigma_tails():
    assert sigma_tail_bound(TRUNCATION, constant('t')).hi <= Fraction('1.01e-21')
    assert sigma_tail_bound(TRUNCATION, constant('s')).hi <= Fraction('7.204e-11')


def test_truncations():
    coeffs, shift = truncation('F')
    assert shift == 1
    assert coeffs[:5] == (1, 0, 4, 0, 6)
    assert shift + len(coeffs) - 1 == TRUNCATION
    psi, psi_shift = truncation('psi')
    assert psi_shift == -1
    assert psi[:3] == (1, 8, 20)


def test_mismatch_starts_at_truncation():
    coeffs, shift = mismatch()
    assert shift == TRUNCATION
    assert coeffs[0] != 0


def test_laurent_sup_takes_the_larger_endpoint():
    coeffs, shift = (1, 0, 1), -1
    # q^-1 + q on [1/4, 1/2]: 17/4 at 1/4, 5/2 at 1/2
    bound = laurent_sup(coeffs, shift, Interval(Fraction(1, 4)),
                        Interval(Fraction(1, 2)))
    assert Fraction(17, 4) in bound


@pytest.mark.parametrize('form', ['F_on_z', 'F_on_tau', 'theta4_on_tau',
                                  'theta4_on_z'])
def test_sup_certificates(form):
    assert certify_sup(form).passed


def test_derivative_bounds_of_F():
    assert derivative_bound('F', 'arc').hi <= Fraction('1.42')
    assert derivative_bound('F', 'tau').hi <= Fraction('31.26')


def test_decay_factor():
    decay = decay_factor()
    assert decay.hi <= Fraction('0.6173')
    assert decay.lo > Fraction('0.617')


def test_certify_chain():
    reports = certify_chain()
    assert all(r.passed for r in reports)


def test_theorem_threshold():
    assert theorem_threshold(0) == 16
    assert theorem_threshold(2) == 24
    assert theorem_threshold(-1) == 21


# the published values, passed in explicitly
CLAIMED_CHAIN = {key: CLAIMS[name].value for key, name in CHAIN_CONSTANTS.items()}


@pytest.mark.parametrize('ell,m', [(0, 16), (2, 24), (-1, 21), (1, 40)])
def test_zero_bound_chain(ell, m):
    reports = certify_zero_bound(ell, m, CLAIMED_CHAIN)
    assert all(r.passed for r in reports), [r.name for r in reports
                                            if not r.passed]


def test_zero_bound_hypothesis_fails_below_threshold():
    reports = {r.name: r for r in certify_zero_bound(0, 10, CLAIMED_CHAIN)}
    assert not reports['hypothesis m >= 16'].passed


def test_report_json_rounds_outward():
    certified = Interval(Fraction(1, 3), Fraction(2, 3))
    result = report('sup |F(z)|', certified)
    data = result.to_json()
    assert Fraction(data['certified_lo']) <= Fraction(1, 3)
    assert Fraction(data['certified_hi']) >= Fraction(2, 3)
    assert data['pass'] == (Fraction(2, 3) <= CLAIMS['sup |F(z)|'].value)
    assert set(data) == {
        'name', 'claimed', 'certified_lo', 'certified_hi', 'relation', 'pass',
        'required', 'note'
    }


def test_interval_relation():
    result = CertificateReport(name='t',
                               claimed=(Fraction('0.3292'), Fraction('0.3294')),
                               certified=constant('t'),
                               relation='in',
                               required=True,
                               note='')
    assert result.passed


def test_psi_at_the_top_of_the_arc():
    centre = constant('pi') / 2
    enclosure = cell_enclosure('psi', 'arc', centre, Fraction(0))
    slack = Fraction(1, 10**20)
    assert enclosure.re.lo < 8 + slack and enclosure.re.hi > 8 - slack
    assert enclosure.im.mag() < slack


def test_grids_cover_their_windows():
    cells = arc_cells(Fraction(1, 100))
    last_centre, radius, _ = cells[-1]
    assert 3 * constant('pi').lo / 4 in last_centre
    assert radius == Fraction(1, 200)
    pieces = line_cells(Fraction(-1, 2), Fraction(0), Fraction(1, 10))
    assert len(pieces) == 5
    assert pieces[0][0].lo - pieces[0][1] == Fraction(-1, 2)


def test_inf_cell_lower_bound():
    centre = constant('pi') / 2
    value, lower = _inf_cell((centre, Fraction(1, 2000), 0),
                             line='arc',
                             name='F',
                             lipschitz=Fraction('1.42'),
                             tail=Fraction('1.01e-21'),
                             target=Fraction(0),
                             max_refinement=0)
    assert lower < value
    assert value - lower <= Fraction('1.42') / 2000 + Fraction('1.01e-21')


def test_inf_grid_on_a_coarse_arc_grid():
    grid_min, lower, _, _ = inf_grid('F_on_z',
                                     number_of_processes=2,
                                     theta_step=Fraction(1, 50))
    assert lower <= grid_min
    assert lower >= CLAIMS['inf |F(z)|'].value


def test_certify_inf_on_a_coarse_arc_grid():
    result = certify_inf('F_on_z',
                         number_of_processes=2,
                         theta_step=Fraction(1, 50))
    assert result.name == 'inf |F(z)|'
    assert result.passed
    assert result.certified.lo <= result.certified.hi


def test_certify_inf_rejects_unknown_forms():
    with pytest.raises(ValueError):
        certify_inf('theta4_on_z')


def test_derivative_bounds_of_psi():
    du = derivative_bound('psi', 'tau')
    dtheta = derivative_bound('psi', 'arc')
    assert du.hi <= Fraction('2008.64')
    assert du.lo > 1990
    assert dtheta.hi <= Fraction('36.59')

    # the q^-1 term enters with n = -1, so it is subtracted
    coeffs, shift = truncation('psi')
    s = constant('s')
    positive = Interval(0)
    for j, c in enumerate(coeffs):
        n = j + shift
        if n > 0:
            positive = positive + n * abs(c) * s**n
    pole_term = 2 * constant('pi') * (Interval(abs(coeffs[0])) / s)
    assert 11 < pole_term.lo and pole_term.hi < 12
    signed = 2 * constant('pi') * positive - pole_term
    assert signed.lo <= du.hi and du.lo <= signed.hi


def test_children_are_clamped_to_the_window():
    cell = (Interval(0), Fraction(1, 2), 0)
    (left, left_radius, depth), (right, right_radius, _) = _children(
        cell, (Fraction(-1, 4), Fraction(1)))
    assert depth == 1
    assert left.lo - left_radius == Fraction(-1, 4)
    assert left.hi + left_radius == 0
    assert right.lo - right_radius == 0
    assert right.hi + right_radius == Fraction(1, 2)
    assert len(_children(cell, (Fraction(1, 8), Fraction(1)))) == 1
    assert len(_children(cell)) == 2


def test_refined_arc_cells_stay_in_the_window(monkeypatch):
    seen = []
    point = certify_module._point

    def recording(line, centre):
        seen.append(centre)
        return point(line, centre)

    monkeypatch.setattr(certify_module, '_point', recording)
    window = arc_window()
    first = arc_cells(Fraction(1, 50))[0]
    # |F| <= 1/2, so a target of 1 forces refinement down to the depth cap
    _inf_cell(first,
              line='arc',
              name='F',
              lipschitz=Fraction('1.42'),
              tail=Fraction(0),
              target=Fraction(1),
              max_refinement=3,
              window=window)
    assert len(seen) > 4
    assert all(window[0] <= c.lo and c.hi <= window[1] for c in seen)


def _stored_rows(**failed):
    return [{
        'name': name,
        'certified_hi': str(CLAIMS[name].value),
        'pass': not failed.get(key, False),
        'required': True
    } for key, name in CHAIN_CONSTANTS.items()]


def test_chain_constants_from_stored_rows():
    assert chain_constants(_stored_rows()) == CLAIMED_CHAIN


def test_chain_constants_refuse_failed_or_missing_rows():
    with pytest.raises(UncertifiedConstants):
        chain_constants(_stored_rows(integral=True))
    with pytest.raises(UncertifiedConstants):
        chain_constants(_stored_rows()[1:])


def test_zero_bound_needs_every_constant():
    with pytest.raises(UncertifiedConstants):
        certify_zero_bound(0, 16, {'decay': Fraction('0.6173')})


def test_psi_bounds_on_a_coarse_arc_grid():
    reports = {
        r.name: r
        for r in certify_psi_bounds(f_inf_z=CLAIMS['inf |F(z)|'].value,
                                    f_inf_tau=CLAIMS['inf |F(tau)|'].value,
                                    number_of_processes=2,
                                    theta_step=Fraction(1, 50))
    }
    for name in ['tail psi(tau)', 'tail psi(z)', 'sup |d psi~/du|',
                 'sup |d psi~/dtheta|', 'inf psi(z)', 'sup psi(z)']:
        assert reports[name].required
        assert reports[name].passed, name
    lo = reports['inf psi(z)'].certified.lo
    hi = reports['sup psi(z)'].certified.hi
    assert 0 < lo < 8 < hi < 16


def test_quotient_integral_pieces():
    reports = {
        r.name: r
        for r in certify_quotient_integral(
            tail=CLAIMS['tail psi(tau)'].value,
            psi_lo=CLAIMS['inf psi(z)'].value,
            psi_hi=CLAIMS['sup psi(z)'].value,
            number_of_processes=2,
            u_step=Fraction(1, 100))
    }
    pieces = ['quotient integral, edge', 'quotient integral, conditions',
              'quotient integral, centre']
    for name in pieces + ['quotient integral']:
        assert reports[name].required
        assert reports[name].passed, name
    assert reports['quotient integral, edge'].certified.hi <= Fraction('28.7631')
    assert reports['quotient integral, centre'].certified.hi <= Fraction('51.4621')
    # the conditions piece is bounded by 2 on [-0.3880, -0.2001], doubled
    assert reports['quotient integral, conditions'].certified.hi == Fraction('0.7516')
    total = reports['quotient integral'].certified.hi
    assert total == sum(reports[name].certified.hi for name in pieces)
    assert total <= Fraction('80.9768')


@pytest.fixture(scope='module')
def section5_reports():
    return certify_constants(number_of_processes=2,
                             theta_step=Fraction(1, 50),
                             u_step=Fraction(1, 100))


def test_certify_constants_covers_every_claim(section5_reports):
    names = [r.name for r in section5_reports]
    assert sorted(names) == sorted(CLAIMS)
    assert all(r.certified.lo <= r.certified.hi for r in section5_reports)
    assert all_passed(section5_reports), [
        r.name for r in section5_reports if r.required and not r.passed
    ]


def test_zero_bound_from_certified_constants(section5_reports):
    constants = chain_constants(section5_reports)
    for key, name in CHAIN_CONSTANTS.items():
        assert constants[key] <= CLAIMS[name].value
    reports = certify_zero_bound(2, 24, constants)
    assert all_passed(reports)
