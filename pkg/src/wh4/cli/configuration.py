import configparser
import logging
from fractions import Fraction
from multiprocessing import cpu_count
from os import environ
from os.path import dirname, isfile, join, realpath

import click

from wh4.backend.basis import FAMILIES, minimal_pole
from wh4.tools.report_writer import FORMATS

max_np = cpu_count()

DEFAULT_CONFIG = join(dirname(realpath(__file__)), 'wh4.conf')

log = logging.getLogger(__name__)


def _check_positive(ctx, param, value):
    if value is None:
        return value
    ivalue = int(value)
    if ivalue <= 0:
        raise click.BadParameter('%s is an invalid positive int value' % value)
    return ivalue


def _check_even(ctx, param, value):
    values = value if isinstance(value, tuple) else (value, )
    for v in values:
        if v is not None and v % 2:
            raise click.BadParameter(f'weight must be even, got {v}')
    return value


def _parse_fraction(ctx, param, value):
    if value is None:
        return value
    try:
        fraction = Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f'{value} is not a rational number')
    if fraction <= 0:
        raise click.BadParameter(f'{value} must be positive')
    return fraction


GENERAL_OPTIONS = [
    click.option(
        '-c',
        '--config',
        type=click.Path(readable=True, dir_okay=False),
        help='Path to the configuration file with the default precisions, windows and grids. If it does not exist the packaged defaults are used.',
        default=DEFAULT_CONFIG,
        show_default=True),
    click.option(
        '-o',
        '--output',
        type=click.Path(writable=True, dir_okay=False),
        help='File the report is written to. Written to standard output if omitted.',
        default=None),
    click.option(
        '-f',
        '--format',
        type=click.Choice(FORMATS),
        help='Report format. Defaults to the extension of the output file, then to text.',
        default=None),
]

PROCESS_OPTIONS = [
    click.option(
        '-np',
        '--number-of-processes',
        type=click.IntRange(1, max_np, clamp=True),
        help='Number of processes used in parallel. If None defaults to cpu-count',
        default=max_np,
        show_default=True),
]

ELEMENT_OPTIONS = [
    click.option('-fa',
                 '--family',
                 type=click.Choice(sorted(FAMILIES)),
                 help='Basis family.',
                 default='f',
                 show_default=True),
    click.option('-k',
                 '--weight',
                 type=int,
                 callback=_check_even,
                 help='Even weight of the basis element.',
                 default=0,
                 show_default=True),
    click.option('-m',
                 '--pole',
                 type=int,
                 help='Order of the pole at infinity.',
                 default=1,
                 show_default=True),
]

TERMS_OPTIONS = [
    click.option(
        '-t',
        '--terms',
        type=int,
        callback=_check_positive,
        help='Number of known terms counted from the leading exponent. Defaults to [series] default_terms.',
        default=None),
]

ARC_OPTIONS = [
    click.option(
        '-b',
        '--bits',
        type=int,
        help='Working precision in bits. Overrides the WH4_BITS environment variable and [arc] bits.',
        default=None),
    click.option('-mb',
                 '--max-bits',
                 type=int,
                 help='Precision up to which evaluations are retried.',
                 default=None),
    click.option('-s',
                 '--samples',
                 type=int,
                 help='Number of equally spaced samples in the window.',
                 default=None),
    click.option('-tl',
                 '--theta-lo',
                 type=float,
                 help='Start of the theta window as a multiple of pi.',
                 default=None),
    click.option('-th',
                 '--theta-hi',
                 type=float,
                 help='End of the theta window as a multiple of pi.',
                 default=None),
]

CERTIFY_OPTIONS = [
    click.option('-pb',
                 '--precision-bits',
                 type=int,
                 help='Dyadic grid of the interval endpoints, in bits.',
                 default=None),
    click.option('-ts',
                 '--theta-step',
                 callback=_parse_fraction,
                 help='Spacing of the arc grid, e.g. 1/1000.',
                 default=None),
    click.option('-us',
                 '--u-step',
                 callback=_parse_fraction,
                 help='Cell width on the horizontal line, e.g. 1/2000.',
                 default=None),
    click.option('-mr',
                 '--max-refinement',
                 type=int,
                 help='Bisection depth allowed for cells that miss their target.',
                 default=None),
]


class Configuration:
    """
    Merges the packaged configuration file, the WH4_BITS environment variable
    and the command line, in increasing priority, and validates the result.
    """

    def __init__(self,
                 config=DEFAULT_CONFIG,
                 output=None,
                 format=None,
                 number_of_processes=max_np,
                 family=None,
                 weight=None,
                 pole=None,
                 terms=None,
                 bits=None,
                 max_bits=None,
                 samples=None,
                 theta_lo=None,
                 theta_hi=None,
                 precision_bits=None,
                 theta_step=None,
                 u_step=None,
                 max_refinement=None):
        self.config = config
        self.number_of_processes = number_of_processes
        self.writer_args = {'output': output, 'format': format}
        self.family = family
        self.weight = weight
        self.pole = pole

        conf_parser = self._load_config()
        series_conf = conf_parser['series']
        arc_conf = conf_parser['arc']
        certify_conf = conf_parser['certify']

        self.terms = terms or series_conf.getint('default_terms')
        env_bits = environ.get('WH4_BITS')
        if bits is None and env_bits:
            log.debug(f'Precision taken from WH4_BITS={env_bits}.')
            try:
                bits = int(env_bits)
            except ValueError:
                raise click.BadParameter(f'WH4_BITS={env_bits} is not an integer')
        self.arc_args = {
            'bits': bits or arc_conf.getint('bits'),
            'max_bits': max_bits or arc_conf.getint('max_bits'),
        }
        self.samples = samples or arc_conf.getint('samples')
        self.theta_window = (theta_lo if theta_lo is not None else
                             arc_conf.getfloat('theta_lo'),
                             theta_hi if theta_hi is not None else
                             arc_conf.getfloat('theta_hi'))
        self.precision_bits = precision_bits or certify_conf.getint(
            'precision_bits')
        self.certify_args = {
            'theta_step': theta_step or Fraction(certify_conf['theta_step']),
            'u_step': u_step or Fraction(certify_conf['u_step']),
            'max_refinement': max_refinement if max_refinement is not None
            else certify_conf.getint('max_refinement'),
            'number_of_processes': number_of_processes
        }
        self._validate()

    def _validate(self):
        if self.weight is not None and self.pole is not None and self.family:
            lowest = minimal_pole(self.family, self.weight)
            if self.pole < lowest:
                raise click.BadParameter(
                    f'{self.family}_{{{self.weight},m}} needs m >= {lowest}, '
                    f'got {self.pole}')
        if self.arc_args['bits'] < 64:
            raise click.BadParameter(
                f'precision must be at least 64 bits, got {self.arc_args["bits"]}')
        if self.arc_args['max_bits'] < self.arc_args['bits']:
            raise click.BadParameter('max-bits is below bits')
        if self.samples < 2:
            raise click.BadParameter(
                f'at least 2 samples are needed, got {self.samples}')
        lo, hi = self.theta_window
        if not 0 < lo < hi < 1:
            raise click.BadParameter(
                f'theta window [{lo}, {hi}] pi must lie inside (0, pi)')
        if self.precision_bits < 64:
            raise click.BadParameter(
                f'interval precision must be at least 64 bits, got {self.precision_bits}')
        if self.certify_args['max_refinement'] < 0:
            raise click.BadParameter('max-refinement cannot be negative')

    def element_prec(self, pole=None):
        """Absolute precision giving self.terms known terms from q^{-pole}."""
        pole = self.pole if pole is None else pole
        return -pole + self.terms

    def _load_config(self):
        """
        Parses the configuration file given on the commandline. Keys it does
        not set fall back to the packaged defaults.
        """
        conf_parser = configparser.ConfigParser()
        conf_parser.read(DEFAULT_CONFIG)
        if isfile(self.config):
            log.debug(f'Found config file {self.config}')
            conf_parser.read(self.config)
        else:
            log.debug(f'No config file at {self.config}, using packaged defaults.')
        return conf_parser
