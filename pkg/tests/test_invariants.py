"""
Test hyperplanes, character exponents, basic maps and theta rewriting
"""
import numpy as np
import pytest

from quotient_hardy.core.errors import InvalidHsop, NotInvariant, NotReflectionGroup
from quotient_hardy.core.group_core import generate_group, named_family
from quotient_hardy.core.invariants import (
    annotated_characters,
    basic_map,
    generating_polynomial,
    hyperplanes,
    is_relative_invariant,
    rewrite_in_theta,
    verify_jacobian_factorization,
    weighted_exponents,
)
from quotient_hardy.core.poly_engine import MixedPolynomial, compose, random_polynomial


def z(d, i):
    return MixedPolynomial.variable(d, i)


def test_symmetric3_hyperplanes(s3):
    H = hyperplanes(s3)
    expected = [z(3, 0) - z(3, 1), z(3, 0) - z(3, 2), z(3, 1) - z(3, 2)]
    assert H.count == 3
    assert H.orders == [2, 2, 2]
    for form, target in zip(H.linear_forms, expected):
        assert form.allclose(target)


def test_wreath_hyperplane_order(wreath):
    H = hyperplanes(wreath)
    expected = [z(2, 0), z(2, 1), z(2, 0) - z(2, 1), z(2, 0) + z(2, 1)]
    assert H.count == 4
    for form, target in zip(H.linear_forms, expected):
        assert form.allclose(target)
    for a, m in zip(H.generators, H.orders):
        assert wreath.determinants[a] == pytest.approx(np.exp(2j * np.pi / m))


def test_hyperplanes_need_reflection_group():
    rotation = np.array([[0, -1], [1, 0]], dtype=complex)
    with pytest.raises(NotReflectionGroup):
        hyperplanes(generate_group([rotation]))


def test_wreath_character_exponents(wreath):
    H = hyperplanes(wreath)
    characters = annotated_characters(wreath, H)
    assert [chi.exponents for chi in characters] == [
        (0, 0, 0, 0), (0, 0, 1, 1), (1, 1, 0, 0), (1, 1, 1, 1),
    ]
    assert characters[0].name == 'trivial'
    assert characters[-1].name == 'sign'


def test_cyclic3_character_names(groups):
    G = groups['cyclic3']
    characters = annotated_characters(G, hyperplanes(G))
    assert [chi.name for chi in characters] == ['trivial', 'chi1', 'sign']


@pytest.mark.parametrize("name", ['symmetric2', 'symmetric3', 'cyclic3', 'cyclic2_2', 'wreath2_2'])
def test_generating_polynomials_are_relative_invariants(groups, name):
    G = groups[name]
    H = hyperplanes(G)
    for chi in annotated_characters(G, H):
        ell = generating_polynomial(H, chi)
        assert is_relative_invariant(G, ell, chi)


def test_sign_generating_polynomial_of_s2(s2):
    H = hyperplanes(s2)
    sign = annotated_characters(s2, H)[1]
    assert generating_polynomial(H, sign).allclose(z(2, 0) - z(2, 1))


@pytest.mark.parametrize(
    "name, constant",
    [
        ('symmetric2', 1),
        ('symmetric3', 1),
        ('cyclic3', 3),
        ('cyclic2_2', 4),
        ('wreath2_2', 4),
    ]
)
def test_jacobian_constant(groups, name, constant):
    G = groups[name]
    c = verify_jacobian_factorization(basic_map(G), hyperplanes(G))
    assert c == pytest.approx(constant)


@pytest.mark.parametrize("name", ['symmetric2', 'symmetric3', 'cyclic3', 'cyclic2_2', 'wreath2_2'])
def test_degree_product_is_group_order(groups, name):
    G = groups[name]
    assert int(np.prod(basic_map(G).degrees)) == G.order


def test_user_map_is_verified(s2):
    power_sums = [z(2, 0) + z(2, 1), z(2, 0) ** 2 + z(2, 1) ** 2]
    B = basic_map(s2, power_sums)
    assert B.source == 'user'
    assert B.degrees == (1, 2)


def test_user_map_must_be_invariant(s2):
    with pytest.raises(InvalidHsop):
        basic_map(s2, [z(2, 0), z(2, 0) * z(2, 1)])


def test_user_map_degree_product(s2):
    with pytest.raises(InvalidHsop):
        basic_map(s2, [z(2, 0) + z(2, 1), z(2, 0) ** 3 + z(2, 1) ** 3])


def test_weighted_exponents():
    assert sorted(weighted_exponents((1, 2), 4)) == [(0, 2), (2, 1), (4, 0)]
    assert list(weighted_exponents((2,), 3)) == []


def test_theta_power_cache(s3):
    B = basic_map(s3)
    first = B.theta_power((1, 0, 2))
    assert B.theta_power((1, 0, 2)) is first
    assert first.allclose(B.map.components[0] * B.map.components[2] ** 2)


@pytest.mark.parametrize("name", ['symmetric3', 'wreath2_2', 'cyclic2_2'])
def test_rewrite_in_theta_inverts_compose(groups, name, rng):
    G = groups[name]
    B = basic_map(G)
    p_hat = random_polynomial(G.dimension, 2, rng, n_terms=5)
    p = compose(p_hat, B.map)
    assert rewrite_in_theta(p, B).allclose(p_hat, 1e-8)


def test_rewrite_rejects_non_invariant(s2):
    with pytest.raises(NotInvariant):
        rewrite_in_theta(z(2, 0), basic_map(s2))


def test_reflection_group_from_custom_generators():
    # G(3,1,1) given as a custom group behaves like cyclic(3)
    G = named_family({'family': 'custom', 'generators': [[[[-0.5, np.sqrt(3) / 2]]]]})
    H = hyperplanes(G)
    assert G.order == 3
    assert H.orders == [3]


def test_rewrite_is_exact_at_high_degree(s3):
    B = basic_map(s3)
    p = B.theta_power((10, 5, 5))
    expected = MixedPolynomial.monomial(3, (10, 5, 5))
    assert rewrite_in_theta(p, B, check=False).allclose(expected, 1e-9)


def test_rewrite_of_complete_homogeneous_polynomial(s3):
    # h_3 = e1^3 - 2 e1 e2 + e3
    B = basic_map(s3)
    variables = [z(3, i) for i in range(3)]
    h3 = MixedPolynomial.zero(3)
    for a in weighted_exponents((1, 1, 1), 3):
        term = MixedPolynomial.one(3)
        for v, k in zip(variables, a):
            term = term * v ** k
        h3 = h3 + term
    expected = (MixedPolynomial.monomial(3, (3, 0, 0)) - MixedPolynomial.monomial(3, (1, 1, 0)) * 2
                + MixedPolynomial.monomial(3, (0, 0, 1)))
    assert rewrite_in_theta(h3, B).allclose(expected, 1e-12)


def test_rewrite_with_colliding_leads_uses_least_squares(s2):
    # p1 and p2 share the leading monomial z1^2 in degree two
    power_sums = [z(2, 0) + z(2, 1), z(2, 0) ** 2 + z(2, 1) ** 2]
    B = basic_map(s2, power_sums)
    p = power_sums[0] ** 2 + power_sums[1] * 3
    expected = MixedPolynomial.monomial(2, (2, 0)) + MixedPolynomial.monomial(2, (0, 1)) * 3
    assert rewrite_in_theta(p, B).allclose(expected, 1e-9)
