import json
import logging

import click

from wh4.backend.certify import (all_passed, certify_constants,
                                 certify_zero_bound, chain_constants,
                                 theorem_threshold)
from wh4.backend.errors import WH4Error
from wh4.backend.interval import set_precision
from wh4.cli.configuration import (CERTIFY_OPTIONS, GENERAL_OPTIONS,
                                   PROCESS_OPTIONS, Configuration)
from wh4.tools.report_writer import Output

from .utils import add_options, fail, write_report

log = logging.getLogger(__name__)

DESCRIPTION_CERTIFY = 'Re-derive the numerical constants of the error bound with interval arithmetic.'
DESCRIPTION_SECTION5 = 'Certify every constant of the error bound on the arc and on the line Im tau = 1/10.'
DESCRIPTION_THEOREM1 = 'Certify the inequality chain giving at least floor(sqrt(2) m/2 + k/4) zeros for given (ell, m).'

REPORT_COLUMNS = [
    'name', 'claimed', 'certified_lo', 'certified_hi', 'relation', 'pass',
    'required', 'note'
]
STORED_KEYS = {'name', 'certified_hi', 'pass', 'required'}


def _output(reports):
    data = [r.to_json() for r in reports]
    rows = [[row[column] for column in REPORT_COLUMNS] for row in data]
    text = [
        f'{row["name"]}: [{row["certified_lo"]}, {row["certified_hi"]}] '
        f'{row["relation"]} {row["claimed"]}: '
        f'{"pass" if row["pass"] else "FAIL"}'
        f'{"" if row["required"] else " (advisory)"}' for row in data
    ]
    return Output(data=data, header=REPORT_COLUMNS, rows=rows, text=text)


def _stored_rows(path):
    """Rows of a JSON report written by certify section5."""
    try:
        with open(path) as stored:
            rows = json.load(stored)
    except ValueError as error:
        raise click.BadParameter(f'{path} is not a JSON report: {error}')
    if not isinstance(rows, list) or not all(
            isinstance(row, dict) and STORED_KEYS <= set(row) for row in rows):
        raise click.BadParameter(
            f'{path} is not a JSON report of certify section5')
    log.info(f'Chain constants taken from the stored report {path}.')
    return rows


@click.group(help=DESCRIPTION_CERTIFY)
def certify():
    pass


@certify.command(name='section5', help=DESCRIPTION_SECTION5)
@add_options(GENERAL_OPTIONS)
@add_options(CERTIFY_OPTIONS)
@add_options(PROCESS_OPTIONS)
def section5(**kwargs):
    configuration = Configuration(**kwargs)
    set_precision(configuration.precision_bits)
    try:
        reports = certify_constants(**configuration.certify_args)
    except WH4Error as error:
        fail(error)
    write_report(configuration, _output(reports), passed=all_passed(reports))


@certify.command(name='theorem1', help=DESCRIPTION_THEOREM1)
@add_options(GENERAL_OPTIONS)
@add_options(CERTIFY_OPTIONS)
@add_options(PROCESS_OPTIONS)
@click.option('-l', '--ell', type=int, default=0, show_default=True,
              help='ell = k/2.')
@click.option('-m', '--pole', type=int, default=None,
              help='Pole order m. Defaults to the threshold 4 ell + 16 or 5 |ell| + 16.')
@click.option('-fr',
              '--from-report',
              type=click.Path(exists=True, dir_okay=False),
              default=None,
              help='JSON report of certify section5 to take the chain constants from instead of certifying them again.')
def theorem1(ell, pole, from_report, **kwargs):
    configuration = Configuration(**kwargs)
    set_precision(configuration.precision_bits)
    m = theorem_threshold(ell) if pole is None else pole
    reports = []
    try:
        if from_report is None:
            reports = certify_constants(**configuration.certify_args)
            if not all_passed(reports):
                write_report(configuration, _output(reports), passed=False)
            constants = chain_constants(reports)
        else:
            constants = chain_constants(_stored_rows(from_report))
        reports = reports + certify_zero_bound(ell, m, constants)
    except WH4Error as error:
        fail(error)
    write_report(configuration, _output(reports), passed=all_passed(reports))


certify.add_command(section5, name='constants')
certify.add_command(theorem1, name='zero-bound')
