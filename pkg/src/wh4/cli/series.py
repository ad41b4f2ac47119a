import logging

import click

from wh4.backend.basis import (faber_extract, make_element, valence_count)
from wh4.backend.errors import (InsufficientPrecision, PoleOrderTooSmall,
                                WH4Error)
from wh4.backend.forms import named_form
from wh4.backend.polynomial import closed_interval_count, sturm_count
from wh4.cli.configuration import (ELEMENT_OPTIONS, GENERAL_OPTIONS,
                                   TERMS_OPTIONS, Configuration)
from wh4.tools.report_writer import Output

from .utils import add_options, fail, write_report

log = logging.getLogger(__name__)

NAMED_FORMS = ['theta', 'theta4', 'E2', 'F', 'psi_half', 'psi_zero', 'psi_inf', 'g21']

DESCRIPTION_EXPAND = 'Print the q-expansion of a basis element or of a named form.'
DESCRIPTION_FABER = 'Print the Faber polynomial of a basis element and count its roots in [0, 16].'


def _build(configuration):
    try:
        return make_element(configuration.family, configuration.weight,
                            configuration.pole, configuration.element_prec())
    except (PoleOrderTooSmall, InsufficientPrecision) as error:
        raise click.BadParameter(str(error))


def _series_output(name, series, extra=None):
    data = {'name': name, 'series': series.to_json()}
    data.update(extra or {})
    rows = [[n, str(c)] for n, c in series.items()]
    return Output(data=data,
                  header=['exponent', 'coefficient'],
                  rows=rows,
                  text=[f'{name} = {series}'])


@click.command(help=DESCRIPTION_EXPAND)
@add_options(GENERAL_OPTIONS)
@add_options(ELEMENT_OPTIONS)
@add_options(TERMS_OPTIONS)
@click.option('-nf',
              '--form',
              type=click.Choice(NAMED_FORMS),
              help='Expand a named form instead of a basis element.',
              default=None)
def expand(form, **kwargs):
    if form is not None:
        kwargs['pole'] = None
    configuration = Configuration(**kwargs)
    try:
        if form is not None:
            series = named_form(form, configuration.terms + 2).series
            series = series.truncate(series.lead + configuration.terms)
            report = _series_output(form, series)
        else:
            element = _build(configuration)
            name = (f'{element.family}_{{{element.weight},{element.pole}}}')
            report = _series_output(
                name, element.series, {
                    'family': element.family,
                    'weight': element.weight,
                    'pole': element.pole
                })
    except WH4Error as error:
        fail(error)
    write_report(configuration, report)


@click.command(help=DESCRIPTION_FABER)
@add_options(GENERAL_OPTIONS)
@add_options(ELEMENT_OPTIONS)
@add_options(TERMS_OPTIONS)
def faber(**kwargs):
    configuration = Configuration(**kwargs)
    element = _build(configuration)
    try:
        poly = faber_extract(element)
    except InsufficientPrecision as error:
        raise click.BadParameter(str(error))
    except WH4Error as error:
        fail(error)
    agrees = poly == element.faber
    if not agrees:
        log.error(f'Extracted {poly} but the basis was built from {element.faber}.')
    open_count = sturm_count(poly, 0, 16)
    closed_count, endpoint_roots = closed_interval_count(poly, 0, 16)
    name = f'{element.family}_{{{element.weight},{element.pole}}}'
    data = {
        'name': name,
        'faber': poly.to_json(),
        'degree': poly.degree,
        'roots_in_open_interval': open_count,
        'roots_in_closed_interval': closed_count,
        'endpoint_roots': [str(x) for x in endpoint_roots],
        'valence': valence_count(element),
        'agrees_with_basis': agrees
    }
    report = Output(data=data,
                    header=['degree', 'coefficient'],
                    rows=[[i, str(c)] for i, c in enumerate(poly.coeffs)],
                    text=[
                        f'P = {poly}',
                        f'distinct roots in (0, 16): {open_count}',
                        f'distinct roots in [0, 16]: {closed_count}'
                        f' (endpoints: {", ".join(map(str, endpoint_roots)) or "none"})',
                        f'valence count m + k/2: {valence_count(element)}',
                    ])
    write_report(configuration, report, passed=agrees)
