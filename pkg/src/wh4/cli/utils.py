import logging
import sys

log = logging.getLogger(__name__)


def add_options(options):
    def _add_options(func):
        for option in reversed(options):
            func = option(func)
        return func

    return _add_options


def write_report(configuration, report, passed=True):
    """Write the report in any case; exit with 1 when a check failed."""
    from ..tools.report_writer import get_writer
    writer = get_writer(**configuration.writer_args)
    writer.write_report(report)
    if not passed:
        log.error('At least one check failed.')
        sys.exit(1)


def fail(error):
    """Computation errors after validation: log and exit with 1."""
    log.error(f'{type(error).__name__}: {error}')
    sys.exit(1)
