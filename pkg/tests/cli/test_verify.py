import json
from os.path import join

from click.testing import CliRunner

from wh4.__main__ import cli


def test_duality_for_several_weights(tmpdir):
    runner = CliRunner()
    output = join(tmpdir, 'duality.json')
    result = runner.invoke(cli,
                           args=[
                               'verify', 'duality', '-k', '0', '-k', '2',
                               '-mm', '4', '-mn', '4', '-o', output
                           ])
    assert result.exit_code == 0
    with open(output) as report:
        data = json.load(report)
    assert len(data) == 2
    assert all(entry['pass'] for entry in data)


def test_weightless_identity(tmpdir):
    runner = CliRunner()
    output = join(tmpdir, 'denominators.json')
    result = runner.invoke(
        cli, args=['verify', 'denominators', '-p', '20', '-o', output])
    assert result.exit_code == 0
    with open(output) as report:
        data = json.load(report)
    assert len(data) == 1
    assert data[0]['pass']


def test_generating_function(tmpdir):
    runner = CliRunner()
    output = join(tmpdir, 'genfn.txt')
    result = runner.invoke(cli,
                           args=[
                               'verify', 'genfn', '-k', '0', '-ro', '6', '-qo',
                               '6', '-o', output
                           ])
    assert result.exit_code == 0
    with open(output) as report:
        assert 'pass' in report.read()


def test_verify_rejects_odd_weight():
    runner = CliRunner()
    result = runner.invoke(cli, args=['verify', 'parity', '-k', '1'])
    assert result.exit_code == 2


def test_verify_rejects_unknown_identity():
    runner = CliRunner()
    result = runner.invoke(cli, args=['verify', 'triality'])
    assert result.exit_code == 2
