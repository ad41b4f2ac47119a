import logging

import click

from wh4.backend import identities
from wh4.backend.errors import (InsufficientPrecision, PoleOrderTooSmall,
                                WH4Error)
from wh4.cli.configuration import GENERAL_OPTIONS, Configuration, _check_even
from wh4.tools.report_writer import Output

from .utils import add_options, fail, write_report

log = logging.getLogger(__name__)

DESCRIPTION_VERIFY = 'Check a coefficient identity of the level 4 bases exactly.'

# identity -> (function, parameters it takes besides the weight)
IDENTITIES = {
    'duality': (identities.check_duality, ('max_m', 'max_n')),
    'hi-duality': (identities.check_hi_duality, ('max_m', 'max_n')),
    'parity': (identities.check_parity, ('max_m', 'prec')),
    'product-constant': (identities.check_product_constant, ('max_m', 'max_n')),
    'genfn': (identities.check_genfn, ('r_order', 'q_order')),
    'hi-genfn': (identities.check_hi_genfn, ('r_order', 'q_order')),
    'derivative': (identities.check_derivative, ('prec', )),
    'denominators': (identities.check_denominators, ('prec', )),
}

WEIGHTLESS = {'derivative', 'denominators'}

VERIFY_OPTIONS = [
    click.argument('identity', type=click.Choice(sorted(IDENTITIES))),
    click.option('-k',
                 '--weight',
                 type=int,
                 multiple=True,
                 callback=_check_even,
                 help='Even weight; repeat the option to check several weights.',
                 default=(0, ),
                 show_default=True),
    click.option('-mm', '--max-m', type=int, default=10, show_default=True,
                 help='Largest pole order on the left.'),
    click.option('-mn', '--max-n', type=int, default=10, show_default=True,
                 help='Largest pole order on the right.'),
    click.option('-ro', '--r-order', type=int, default=12, show_default=True,
                 help='Order of the generating function in r.'),
    click.option('-qo', '--q-order', type=int, default=12, show_default=True,
                 help='Order of the generating function in q.'),
    click.option('-p', '--prec', type=int, default=None,
                 help='Absolute precision for parity, derivative and denominators.'),
]


def _run(identity, weight, arguments):
    function, parameters = IDENTITIES[identity]
    values = {name: arguments[name] for name in parameters}
    if 'prec' in values and values['prec'] is None:
        del values['prec']
    if identity in WEIGHTLESS:
        return function(**values)
    return function(weight, **values)


@click.command(help=DESCRIPTION_VERIFY)
@add_options(GENERAL_OPTIONS)
@add_options(VERIFY_OPTIONS)
def verify(identity, weight, max_m, max_n, r_order, q_order, prec, **kwargs):
    configuration = Configuration(**kwargs)
    arguments = {
        'max_m': max_m,
        'max_n': max_n,
        'r_order': r_order,
        'q_order': q_order,
        'prec': prec
    }
    weights = (None, ) if identity in WEIGHTLESS else weight
    reports = []
    for k in weights:
        try:
            reports.append(_run(identity, k, arguments))
        except (PoleOrderTooSmall, InsufficientPrecision, ValueError) as error:
            raise click.BadParameter(str(error))
        except WH4Error as error:
            fail(error)
    rows = [[
        report.identity,
        report.ranges.get('k', ''), key, value
    ] for report in reports for example in report.counterexamples
            for key, value in sorted(example.items())]
    output = Output(
        data=[report.to_json() for report in reports],
        header=['identity', 'k', 'field', 'value'],
        rows=rows,
        text=[
            f'{report.identity} {report.ranges}: '
            f'{"pass" if report.passed else "FAIL"}'
            f' ({len(report.counterexamples)} counterexample(s))'
            for report in reports
        ])
    write_report(configuration, output,
                 passed=all(report.passed for report in reports))
