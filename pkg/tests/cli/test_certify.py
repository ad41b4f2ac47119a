import json
from os.path import join

from click.testing import CliRunner

from wh4.__main__ import cli
from wh4.backend.certify import CHAIN_CONSTANTS, CLAIMS


def _stored_report(tmpdir, failed=()):
    """A section5 JSON report holding the published chain constants."""
    path = join(tmpdir, 'section5.json')
    rows = [{
        'name': name,
        'claimed': str(float(CLAIMS[name].value)),
        'certified_lo': '0',
        'certified_hi': str(CLAIMS[name].value),
        'relation': '<=',
        'pass': name not in failed,
        'required': True,
        'note': ''
    } for name in CHAIN_CONSTANTS.values()]
    with open(path, 'w') as stored:
        json.dump(rows, stored)
    return path


def test_theorem1_at_the_threshold(tmpdir):
    runner = CliRunner()
    output = join(tmpdir, 'theorem1.json')
    result = runner.invoke(cli,
                           args=[
                               'certify', 'theorem1', '-fr',
                               _stored_report(tmpdir), '-o', output
                           ])
    assert result.exit_code == 0
    with open(output) as report:
        data = json.load(report)
    assert all(entry['pass'] for entry in data)
    assert 'hypothesis m >= 16' in [entry['name'] for entry in data]


def test_theorem1_for_negative_ell(tmpdir):
    runner = CliRunner()
    output = join(tmpdir, 'theorem1.csv')
    result = runner.invoke(cli,
                           args=[
                               'certify', 'theorem1', '-l', '-2', '-m', '30',
                               '-fr',
                               _stored_report(tmpdir), '-o', output
                           ])
    assert result.exit_code == 0
    with open(output) as report:
        assert report.readline().startswith('name,claimed,certified_lo')


def test_theorem1_below_the_threshold_fails(tmpdir):
    runner = CliRunner()
    output = join(tmpdir, 'theorem1.json')
    result = runner.invoke(cli,
                           args=[
                               'certify', 'theorem1', '-l', '1', '-m', '12',
                               '-fr',
                               _stored_report(tmpdir), '-o', output
                           ])
    assert result.exit_code == 1
    with open(output) as report:
        data = json.load(report)
    failed = [entry['name'] for entry in data if not entry['pass']]
    assert 'hypothesis m >= 20' in failed


def test_zero_bound_is_an_alias_of_theorem1(tmpdir):
    runner = CliRunner()
    output = join(tmpdir, 'zero_bound.json')
    result = runner.invoke(cli,
                           args=[
                               'certify', 'zero-bound', '-l', '2', '-fr',
                               _stored_report(tmpdir), '-o', output
                           ])
    assert result.exit_code == 0
    with open(output) as report:
        data = json.load(report)
    assert 'hypothesis m >= 24' in [entry['name'] for entry in data]


def test_theorem1_refuses_a_report_with_a_failed_constant(tmpdir):
    runner = CliRunner()
    stored = _stored_report(tmpdir, failed=('quotient integral', ))
    result = runner.invoke(cli, args=['certify', 'theorem1', '-fr', stored])
    assert result.exit_code == 1


def test_theorem1_rejects_a_malformed_report(tmpdir):
    runner = CliRunner()
    stored = join(tmpdir, 'broken.json')
    with open(stored, 'w') as broken:
        broken.write('{"name": "decay factor"}')
    result = runner.invoke(cli, args=['certify', 'theorem1', '-fr', stored])
    assert result.exit_code == 2


def test_theorem1_rejects_a_missing_report(tmpdir):
    runner = CliRunner()
    result = runner.invoke(
        cli, args=['certify', 'theorem1', '-fr', join(tmpdir, 'missing.json')])
    assert result.exit_code == 2


def test_section5_fails_when_cells_cannot_be_refined(tmpdir):
    runner = CliRunner()
    output = join(tmpdir, 'section5.json')
    result = runner.invoke(cli,
                           args=[
                               'certify', 'section5', '-np', '2', '-ts',
                               '1/10', '-us', '1/10', '-mr', '0', '-o', output
                           ])
    assert result.exit_code == 1


def test_theorem1_certifies_its_constants_by_default(tmpdir):
    runner = CliRunner()
    output = join(tmpdir, 'theorem1.json')
    # a grid this coarse cannot certify the constants, so the chain never runs
    result = runner.invoke(cli,
                           args=[
                               'certify', 'theorem1', '-np', '2', '-ts',
                               '1/10', '-us', '1/10', '-mr', '0', '-o', output
                           ])
    assert result.exit_code == 1
    assert 'bound at m = 16' not in result.output


def test_certify_rejects_low_interval_precision():
    runner = CliRunner()
    result = runner.invoke(cli, args=['certify', 'theorem1', '-pb', '32'])
    assert result.exit_code == 2
    result = runner.invoke(cli, args=['certify', 'section5', '-pb', '32'])
    assert result.exit_code == 2
