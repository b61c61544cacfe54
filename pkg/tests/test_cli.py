"""
Test the command-line front end: output, exit codes and file handling
"""
import json

import pytest

from quotient_hardy.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_OK, build_parser, main
from quotient_hardy.core.poly_engine import MixedPolynomial

from tests.conftest import GROUP_SPECS, assert_matches_golden, load_golden


def poly_arg(poly):
    return json.dumps(poly.to_json())


def w(d, i):
    return MixedPolynomial.variable(d, i)


@pytest.mark.parametrize("name", ['symmetric2', 'symmetric3', 'cyclic3', 'wreath2_2'])
def test_describe_from_group_file(name, tmp_path, capsys):
    spec_path = tmp_path / 'group.json'
    spec_path.write_text(json.dumps(GROUP_SPECS[name]))
    assert main(['describe', '--group', str(spec_path)]) == EXIT_OK
    assert_matches_golden(json.loads(capsys.readouterr().out), load_golden(f'{name}_describe.json'))


def test_describe_from_family_flags(capsys):
    assert main(['describe', '--family', 'cyclic', '--orders', '2,2']) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload['group']['order'] == 4
    assert payload['jacobian_constant'] == pytest.approx([4.0, 0.0])


def test_output_is_byte_stable(capsys):
    main(['characters', '--family', 'symmetric', '--d', '3'])
    first = capsys.readouterr().out
    main(['characters', '--family', 'symmetric', '--d', '3'])
    assert capsys.readouterr().out == first


def test_missing_group_is_a_config_error(capsys):
    assert main(['describe']) == EXIT_CONFIG


def test_oversized_group_is_rejected():
    assert main(['describe', '--family', 'symmetric', '--d', '9']) == EXIT_CONFIG


def test_bad_tolerance_is_rejected():
    assert main(['describe', '--family', 'symmetric', '--d', '2', '--tol', '-1']) == EXIT_CONFIG


def test_lrho_lists_every_character(capsys):
    assert main(['invariants', 'lrho', '--family', 'wreath', '--m', '2', '--d', '2']) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert len(payload['generating_polynomials']) == 4


def test_onb(capsys):
    assert main(['hardy', 'onb', '--family', 'symmetric', '--d', '2', '--degree', '3']) == EXIT_OK
    basis = json.loads(capsys.readouterr().out)['bases'][0]
    assert basis['character'] == 'sign'
    assert [e['representative'] for e in basis['entries']] == [[1, 0], [2, 0], [3, 0], [2, 1]]


def test_kernel(capsys):
    assert main(['hardy', 'kernel', '--family', 'symmetric', '--d', '2', '--at', '0.5,0;0.5,0']) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload['subspace_kernel'][0] == pytest.approx(1 / 6)
    assert 'quotient_kernel' in payload


def test_kernel_needs_two_points():
    assert main(['hardy', 'kernel', '--family', 'symmetric', '--d', '2', '--at', '0.5,0']) == EXIT_CONFIG


def test_toeplitz_matrix(capsys):
    u = poly_arg(w(2, 0))
    assert main(['toeplitz', 'matrix', '--family', 'symmetric', '--d', '2', '--cutoff', '3', '--u', u]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert len(payload['matrix']) == 4
    assert len(payload['singular_values']) == 4


def test_toeplitz_symbol_from_file(tmp_path, capsys):
    path = tmp_path / 'u.json'
    path.write_text(poly_arg(w(2, 0) + w(2, 1).conjugate()))
    assert main(['toeplitz', 'brown-halmos', '--family', 'symmetric', '--d', '2', '--u', str(path)]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)['verdict'] == 'PASS'


def test_failed_transfer_exits_one(capsys):
    u, v = w(2, 0), w(2, 0).conjugate()
    argv = ['toeplitz', 'product-transfer', '--family', 'symmetric', '--d', '2', '--cutoff', '3',
            '--u', poly_arg(u), '--v', poly_arg(v), '--q', poly_arg(u * v)]
    assert main(argv) == EXIT_FAIL
    report = json.loads(capsys.readouterr().out)
    assert report['verdict'] == 'FAIL'
    assert report['details']['consistent']


def test_symbol_dimension_is_checked():
    assert main(['toeplitz', 'matrix', '--family', 'symmetric', '--d', '2', '--u', poly_arg(w(3, 0))]) == EXIT_CONFIG


def test_malformed_symbol_json():
    assert main(['toeplitz', 'matrix', '--family', 'symmetric', '--d', '2', '--u', '{not json']) == EXIT_CONFIG


def test_verify_all_writes_csv(tmp_path):
    out = tmp_path / 'reports.csv'
    argv = ['verify-all', '--family', 'cyclic', '--orders', '3', '--cutoff', '3', '--degree', '3',
            '--format', 'csv', '--out', str(out)]
    assert main(argv) == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == 'name,verdict,max_deviation,exact_region_size'
    assert all(',PASS,' in line for line in lines[1:])


def test_csv_needs_reports():
    assert main(['describe', '--family', 'symmetric', '--d', '2', '--format', 'csv']) == EXIT_CONFIG


def test_parser_rejects_unknown_check():
    with pytest.raises(SystemExit):
        build_parser().parse_args(['toeplitz', 'hankel', '--family', 'symmetric', '--d', '2'])


SWAP = {'family': 'custom', 'generators': [[[[0, 0], [1, 0]], [[1, 0], [0, 0]]]]}


@pytest.fixture
def swap_group(tmp_path):
    path = tmp_path / 'swap.json'
    path.write_text(json.dumps(SWAP))
    return str(path)


def swap_map():
    return json.dumps([(w(2, 0) + w(2, 1)).to_json(), (w(2, 0) * w(2, 1)).to_json()])


def test_custom_group_needs_no_map_for_characters(swap_group, capsys):
    assert main(['characters', '--group', swap_group]) == EXIT_OK
    assert len(json.loads(capsys.readouterr().out)['characters']) == 2
    assert main(['invariants', 'hyperplanes', '--group', swap_group]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)['count'] == 1
    assert main(['describe', '--group', swap_group]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)['basic_map'] is None


def test_custom_group_without_map_cannot_build_a_basis(swap_group):
    assert main(['hardy', 'onb', '--group', swap_group, '--degree', '3']) == EXIT_FAIL


def test_custom_group_with_user_map(swap_group, capsys):
    assert main(['describe', '--group', swap_group, '--map', swap_map()]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload['basic_map']['source'] == 'user'
    assert payload['jacobian_constant'] is not None
    assert main(['hardy', 'onb', '--group', swap_group, '--map', swap_map(), '--degree', '3']) == EXIT_OK
    basis = json.loads(capsys.readouterr().out)['bases'][0]
    assert [e['representative'] for e in basis['entries']] == [[1, 0], [2, 0], [3, 0], [2, 1]]


def test_map_from_file(swap_group, tmp_path):
    path = tmp_path / 'map.json'
    path.write_text(swap_map())
    assert main(['invariants', 'verify-jacobian', '--group', swap_group, '--map', str(path)]) == EXIT_OK


def test_malformed_map_is_a_config_error(swap_group):
    assert main(['describe', '--group', swap_group, '--map', '[]']) == EXIT_CONFIG
    assert main(['describe', '--group', swap_group, '--map', '{not json']) == EXIT_CONFIG


def test_unexpected_error_exits_one(monkeypatch, caplog):
    def explode(args, config):
        raise RuntimeError('boom')

    monkeypatch.setattr('quotient_hardy.cli.execute', explode)
    assert main(['describe', '--family', 'symmetric', '--d', '2']) == EXIT_FAIL
    assert 'describe failed' in caplog.text
