import csv
import json
import logging
from collections import namedtuple
from os import makedirs
from os.path import abspath, dirname, splitext

import click

log = logging.getLogger(__name__)

# data: JSON-ready payload; header and rows: the CSV table; text: lines for humans
Output = namedtuple('Output', ['data', 'header', 'rows', 'text'])

FORMATS = ['json', 'csv', 'text']


class ReportWriter:
    def __init__(self, output=None):
        self.output = output

    def write_report(self, report):
        if self.output is not None:
            makedirs(dirname(abspath(self.output)), exist_ok=True)
        with click.open_file(self.output or '-', 'w') as output_file:
            self._write(report, output_file)
        if self.output is not None:
            log.info(f'Wrote report to {self.output}.')

    def _write(self, report, output_file):
        raise NotImplementedError('_write must be implemented!')


class JsonReportWriter(ReportWriter):
    def _write(self, report, output_file):
        json.dump(report.data, output_file, indent=2, sort_keys=True)
        output_file.write('\n')


class CsvReportWriter(ReportWriter):
    def _write(self, report, output_file):
        writer = csv.writer(output_file, delimiter=',', lineterminator='\n')
        writer.writerow(report.header)
        for row in report.rows:
            writer.writerow(row)


class TextReportWriter(ReportWriter):
    def _write(self, report, output_file):
        for line in report.text:
            output_file.write(f'{line}\n')


WRITERS = {
    'json': JsonReportWriter,
    'csv': CsvReportWriter,
    'text': TextReportWriter,
}


def get_writer(output=None, format=None):
    """Writer for the explicit format, else for the output extension, else text."""
    if format is None and output is not None:
        extension = splitext(output)[1][1:].lower()
        format = {'txt': 'text'}.get(extension, extension)
        if format not in WRITERS:
            log.debug(f'No writer for ".{extension}", writing text.')
            format = 'text'
    return WRITERS[format or 'text'](output=output)
