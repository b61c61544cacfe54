"""
Test the HTTP blueprints through the Flask test client
"""
import pytest

from quotient_hardy.core.poly_engine import MixedPolynomial

from tests.conftest import GROUP_SPECS, assert_matches_golden, load_golden

S2 = GROUP_SPECS['symmetric2']


def w(d, i):
    return MixedPolynomial.variable(d, i)


def post(client, url, **body):
    response = client.post(url, json=body)
    return response.status_code, response.get_json()


@pytest.mark.parametrize("name", ['symmetric2', 'wreath2_2'])
def test_describe(client, name):
    status, body = post(client, '/api/groups/describe', group=GROUP_SPECS[name])
    assert status == 200
    assert body['success']
    assert_matches_golden(body['data'], load_golden(f'{name}_describe.json'))


def test_describe_without_body(client):
    response = client.post('/api/groups/describe')
    assert response.status_code == 400
    assert response.get_json()['error'] == 'No data provided'


def test_describe_unknown_family(client):
    status, body = post(client, '/api/groups/describe', group={'family': 'dihedral', 'd': 2})
    assert status == 400
    assert not body['success']


def test_characters(client):
    status, body = post(client, '/api/groups/characters', group=GROUP_SPECS['cyclic3'])
    assert status == 200
    assert [chi['name'] for chi in body['data']['characters']] == ['trivial', 'chi1', 'sign']


def test_verify_jacobian(client):
    status, body = post(client, '/api/invariants/verify-jacobian', group=S2)
    assert status == 200
    assert body['data']['constant'] == pytest.approx([1.0, 0.0])


def test_lrho_defaults_to_all_characters(client):
    status, body = post(client, '/api/invariants/lrho', group=S2)
    assert status == 200
    assert len(body['data']['generating_polynomials']) == 2


def test_hyperplanes(client):
    status, body = post(client, '/api/invariants/hyperplanes', group=GROUP_SPECS['symmetric3'])
    assert status == 200
    assert body['data']['count'] == 3


def test_onb(client):
    status, body = post(client, '/api/hardy/onb', group=S2, degree=3)
    assert status == 200
    assert body['data']['bases'][0]['size'] == 4


def test_kernel(client):
    status, body = post(client, '/api/hardy/kernel', group=S2, z=[0.5, 0], w=[[0.5, 0.0], 0])
    assert status == 200
    assert body['data']['subspace_kernel'][0] == pytest.approx(1 / 6)


def test_kernel_needs_both_points(client):
    status, body = post(client, '/api/hardy/kernel', group=S2, z=[0.5, 0])
    assert status == 400
    assert 'w' in body['error']


def test_kernel_outside_domain(client):
    status, body = post(client, '/api/hardy/kernel', group=S2, z=[1.5, 0], w=[0.1, 0])
    assert status == 400
    assert not body['success']


def test_unknown_toeplitz_check(client):
    status, body = post(client, '/api/toeplitz/hankel', group=S2, u=w(2, 0).to_json())
    assert status == 404


def test_toeplitz_matrix_needs_symbol(client):
    status, body = post(client, '/api/toeplitz/matrix', group=S2, cutoff=3)
    assert status == 400
    assert "'u'" in body['error']


def test_toeplitz_rejects_wrong_dimension(client):
    status, _ = post(client, '/api/toeplitz/matrix', group=S2, u=w(3, 0).to_json())
    assert status == 400


def test_brown_halmos(client):
    u = MixedPolynomial.one(2) + w(2, 0) + w(2, 1).conjugate()
    status, body = post(client, '/api/toeplitz/brown-halmos', group=S2, cutoff=5, u=u.to_json())
    assert status == 200
    assert body['data']['verdict'] == 'PASS'


def test_failed_check_is_still_a_response(client):
    u, v = w(2, 0), w(2, 0).conjugate()
    status, body = post(client, '/api/toeplitz/commute-transfer', group=S2, cutoff=3,
                        u=u.to_json(), v=v.to_json())
    assert status == 200
    assert body['data']['verdict'] == 'FAIL'


def test_verify_all(client):
    status, body = post(client, '/api/verify-all', group=GROUP_SPECS['cyclic3'], cutoff=3, degree=3)
    assert status == 200
    assert body['data']['passed']
    assert body['message'] == 'All checks passed'


def test_cutoff_is_capped(client):
    status, body = post(client, '/api/verify-all', group=S2, cutoff=11)
    assert status == 400
    assert body['error'] == 'Cutoff must be at most 10'


def test_bad_character(client):
    status, _ = post(client, '/api/groups/describe', group=S2, character='chi9')
    assert status == 400


def test_symbol_is_an_alias_for_u(client):
    status, body = post(client, '/api/toeplitz/matrix', group=S2, cutoff=2, symbol=w(2, 1).to_json())
    assert status == 200
    assert body['data']['representatives'] == [[1, 0], [2, 0]]


SWAP = {'family': 'custom', 'generators': [[[[0, 0], [1, 0]], [[1, 0], [0, 0]]]]}


def test_custom_group_characters_without_map(client):
    status, body = post(client, '/api/groups/characters', group=SWAP)
    assert status == 200
    assert len(body['data']['characters']) == 2


def test_custom_group_with_map(client):
    basic = [(w(2, 0) + w(2, 1)).to_json(), (w(2, 0) * w(2, 1)).to_json()]
    status, body = post(client, '/api/groups/describe', group=SWAP, map=basic)
    assert status == 200
    assert body['data']['basic_map']['source'] == 'user'


def test_custom_group_onb_without_map(client):
    status, body = post(client, '/api/hardy/onb', group=SWAP, degree=3)
    assert status == 400
    assert not body['success']


def test_map_must_be_a_list(client):
    status, body = post(client, '/api/groups/describe', group=SWAP, map={'d': 2})
    assert status == 400
    assert body['error'] == 'Map must be a non-empty list of polynomials'
