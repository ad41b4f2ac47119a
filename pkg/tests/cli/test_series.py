import json
from os.path import join

from click.testing import CliRunner

from wh4.__main__ import cli


def test_expand_basis_element(tmpdir):
    runner = CliRunner()
    output = join(tmpdir, 'f.txt')
    result = runner.invoke(cli,
                           args=[
                               'expand', '--family', 'f', '--weight', '6',
                               '--pole', '-1', '--terms', '14', '-o', output
                           ])
    assert result.exit_code == 0
    with open(output) as report:
        assert 'q + 198q^5 + 704q^7' in report.read()


def test_expand_json(tmpdir):
    runner = CliRunner()
    output = join(tmpdir, 'f.json')
    result = runner.invoke(
        cli, args=['-v', 'expand', '-m', '2', '-t', '10', '-o', output])
    assert result.exit_code == 0
    with open(output) as report:
        data = json.load(report)
    assert data['name'] == 'f_{0,2}'
    assert data['series']['lead'] == -2
    assert data['series']['prec'] == 8
    assert data['series']['coeffs'][0] == '1/1'


def test_expand_named_form(tmpdir):
    runner = CliRunner()
    output = join(tmpdir, 'psi.csv')
    result = runner.invoke(
        cli, args=['expand', '--form', 'psi_half', '-t', '5', '-o', output])
    assert result.exit_code == 0
    with open(output) as report:
        lines = report.read().splitlines()
    assert lines[0] == 'exponent,coefficient'
    assert lines[1:4] == ['-1,1', '0,8', '1,20']


def test_expand_rejects_odd_weight():
    runner = CliRunner()
    result = runner.invoke(cli, args=['expand', '-k', '3'])
    assert result.exit_code == 2


def test_expand_rejects_small_pole():
    runner = CliRunner()
    result = runner.invoke(cli, args=['expand', '-k', '0', '-m', '-1'])
    assert result.exit_code == 2
    assert 'needs m >= 0' in result.output


def test_faber(tmpdir):
    runner = CliRunner()
    output = join(tmpdir, 'faber.json')
    result = runner.invoke(cli, args=['faber', '-m', '2', '-o', output])
    assert result.exit_code == 0
    with open(output) as report:
        data = json.load(report)
    assert data['degree'] == 2
    assert data['agrees_with_basis']
    assert data['roots_in_open_interval'] == 2
    assert data['valence'] == 2
