import logging

import click
import mpmath

from wh4.backend.arc import (faber_roots_to_theta, scan_arc,
                             sturm_window_count)
from wh4.backend.basis import make_element
from wh4.backend.certify import theorem_threshold
from wh4.backend.errors import (InsufficientPrecision, PoleOrderTooSmall,
                                WH4Error)
from wh4.cli.configuration import (ARC_OPTIONS, ELEMENT_OPTIONS,
                                   GENERAL_OPTIONS, PROCESS_OPTIONS,
                                   TERMS_OPTIONS, Configuration)
from wh4.tools.report_writer import Output

from .utils import add_options, fail, write_report

log = logging.getLogger(__name__)

DESCRIPTION_ARC = 'Evaluate basis elements on the lower boundary arc -1/4 + e^{i theta}/4.'
DESCRIPTION_SCAN = 'Count sign changes of the weighted value of f_{k,m} or g_{k,m} along the arc.'
DESCRIPTION_ROOTS = 'Map the roots of the Faber polynomial of a basis element to positions theta on the arc.'

SAMPLE_COLUMNS = [
    'theta', 'weighted_value', 'imag_residual', 'cosine_target',
    'tail_estimate'
]


def _window(configuration):
    lo, hi = configuration.theta_window
    return mpmath.pi * mpmath.mpf(lo), mpmath.pi * mpmath.mpf(hi)


@click.group(help=DESCRIPTION_ARC)
def arc():
    pass


@arc.command(help=DESCRIPTION_SCAN)
@add_options(GENERAL_OPTIONS)
@add_options(ELEMENT_OPTIONS)
@add_options(TERMS_OPTIONS)
@add_options(ARC_OPTIONS)
@add_options(PROCESS_OPTIONS)
@click.option('-st',
              '--sturm',
              is_flag=True,
              help='Also count the Faber roots in the psi-image of the window.')
def scan(sturm, **kwargs):
    configuration = Configuration(**kwargs)
    if configuration.family not in ('f', 'g'):
        raise click.BadParameter('arc scans cover the f and g families')
    k, m = configuration.weight, configuration.pole
    with mpmath.workprec(configuration.arc_args['bits']):
        theta_lo, theta_hi = _window(configuration)
    try:
        report = scan_arc(k,
                          m,
                          theta_lo,
                          theta_hi,
                          configuration.samples,
                          family=configuration.family,
                          terms=configuration.terms,
                          number_of_processes=configuration.number_of_processes,
                          **configuration.arc_args)
        data = report.to_json()
        passed = report.satisfied or m < theorem_threshold(k // 2)
        if sturm:
            element = make_element(configuration.family, k, m,
                                   configuration.element_prec())
            count = sturm_window_count(element.faber, theta_lo, theta_hi,
                                       configuration.arc_args['bits'],
                                       terms=configuration.terms)
            data['sturm_count'] = count
            data['counts_agree'] = count == report.sign_changes
            passed = passed and data['counts_agree']
    except (PoleOrderTooSmall, InsufficientPrecision) as error:
        raise click.BadParameter(str(error))
    except WH4Error as error:
        fail(error)
    text = [
        f'{report.family}_{{{k},{m}}} on theta in '
        f'[{float(report.theta_lo):.6f}, {float(report.theta_hi):.6f}] '
        f'with {report.samples} samples',
        f'sign changes: {report.sign_changes}',
        f'bound floor(sqrt(2) m/2 + k/4): {report.theorem_bound}',
        f'max |weighted value - cosine target|: {report.max_deviation:.6g}',
    ]
    if sturm:
        text.append(f'Faber roots in the psi-window: {data["sturm_count"]}')
    output = Output(data=data,
                    header=SAMPLE_COLUMNS,
                    rows=[s.to_csv_row() for s in report.arc_samples],
                    text=text)
    write_report(configuration, output, passed=passed)


def _root_line(x, theta, in_window):
    if not theta:
        return f'psi = {x}: too close to a cusp to locate'
    return f'psi = {x} at theta = {theta}' + ('' if in_window else
                                            ' (outside the window)')


@arc.command(help=DESCRIPTION_ROOTS)
@add_options(GENERAL_OPTIONS)
@add_options(ELEMENT_OPTIONS)
@add_options(TERMS_OPTIONS)
@add_options(ARC_OPTIONS)
def roots(**kwargs):
    # the whole open arc unless a window is asked for
    windowed = kwargs.get('theta_lo') is not None or kwargs.get(
        'theta_hi') is not None
    configuration = Configuration(**kwargs)
    bits = configuration.arc_args['bits']
    theta_lo = theta_hi = None
    if windowed:
        with mpmath.workprec(bits):
            theta_lo, theta_hi = _window(configuration)
    try:
        element = make_element(configuration.family, configuration.weight,
                               configuration.pole,
                               configuration.element_prec())
        located = faber_roots_to_theta(element.faber,
                                       bits,
                                       theta_lo=theta_lo,
                                       theta_hi=theta_hi,
                                       samples=configuration.samples)
    except (PoleOrderTooSmall, InsufficientPrecision) as error:
        raise click.BadParameter(str(error))
    except WH4Error as error:
        fail(error)
    with mpmath.workprec(bits):
        rows = [[
            mpmath.nstr(mpmath.mpf(root.x.numerator) / root.x.denominator, 20),
            '' if root.theta is None else mpmath.nstr(root.theta, 20),
            root.in_window
        ] for root in located]
    output = Output(data=[{
        'x_root': x,
        'theta': theta,
        'in_window': in_window
    } for x, theta, in_window in rows],
                    header=['x_root', 'theta', 'in_window'],
                    rows=rows,
                    text=[_root_line(*row) for row in rows])
    write_report(configuration, output)
