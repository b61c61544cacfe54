"""
Test group closure, named families, pseudoreflections and characters
"""
import numpy as np
import pytest

from quotient_hardy.core.errors import ConfigError, NotFinite, Singular, UnsupportedFamily
from quotient_hardy.core.group_core import (
    FamilySpec,
    commutator_subgroup,
    generate_group,
    is_pseudoreflection_group,
    named_family,
    one_dim_characters,
    pseudoreflections,
    root_of_unity,
    sign_character,
)


@pytest.mark.parametrize(
    "name, order",
    [
        ('symmetric2', 2),
        ('symmetric3', 6),
        ('cyclic3', 3),
        ('cyclic2_2', 4),
        ('wreath2_2', 8),
    ]
)
def test_family_orders(groups, name, order):
    G = groups[name]
    assert G.order == order
    assert np.allclose(G[0].matrix, np.eye(G.dimension))


def test_multiplication_table_is_consistent(s3):
    for i in range(s3.order):
        for j in range(s3.order):
            k = s3.multiply(i, j)
            assert np.allclose(s3[i].matrix @ s3[j].matrix, s3[k].matrix)
        assert s3.multiply(i, s3.inverse_of(i)) == 0


def test_element_orders(groups):
    G = groups['cyclic3']
    assert sorted(element.order for element in G) == [1, 3, 3]


def test_singular_generator():
    with pytest.raises(Singular):
        generate_group([np.array([[1, 0], [0, 0]], dtype=complex)])


def test_infinite_group_hits_cap():
    with pytest.raises(NotFinite):
        generate_group([np.array([[2.0]])], cap=50)


def test_unknown_family():
    with pytest.raises(UnsupportedFamily):
        FamilySpec.from_dict({'family': 'dihedral', 'd': 2})


def test_cyclic_dimension_must_match_orders():
    with pytest.raises(ConfigError):
        named_family({'family': 'cyclic', 'orders': [2, 3], 'd': 3})


def test_custom_generators_round_trip_through_spec():
    spec = FamilySpec.from_dict({
        'family': 'custom',
        'generators': [[[[0, 0], [1, 0]], [[1, 0], [0, 0]]]],
    })
    G = named_family(spec)
    assert G.order == 2
    assert spec.to_dict()['generators'][0][0][1] == [1.0, 0.0]


def test_root_of_unity_has_exact_zeros():
    assert root_of_unity(4) == 1j
    assert root_of_unity(2) == -1


@pytest.mark.parametrize(
    "name, count",
    [
        ('symmetric2', 1),
        ('symmetric3', 3),
        ('cyclic3', 2),
        ('cyclic2_2', 2),
        ('wreath2_2', 4),
    ]
)
def test_pseudoreflection_counts(groups, name, count):
    G = groups[name]
    assert len(pseudoreflections(G)) == count
    assert is_pseudoreflection_group(G)


def test_rotation_group_is_not_reflection_group():
    rotation = np.array([[0, -1], [1, 0]], dtype=complex)
    G = generate_group([rotation])
    assert G.order == 4
    assert pseudoreflections(G) == []
    assert not is_pseudoreflection_group(G)


@pytest.mark.parametrize(
    "name, count",
    [
        ('symmetric3', 2),
        ('cyclic3', 3),
        ('cyclic2_2', 4),
        ('wreath2_2', 4),
    ]
)
def test_character_count_is_abelianization_order(groups, name, count):
    G = groups[name]
    characters = one_dim_characters(G)
    assert len(characters) == count
    assert len(characters) == G.order // len(commutator_subgroup(G))
    assert characters[0].is_trivial()
    for chi in characters:
        assert chi.is_multiplicative(G)


def test_sign_character_is_inverse_determinant(s3):
    sign = sign_character(s3)
    assert sign.is_multiplicative(s3)
    for idx in range(s3.order):
        assert sign(idx) * s3.determinants[idx] == pytest.approx(1.0)
    assert any(chi.allclose(sign) for chi in one_dim_characters(s3))


def test_monomial_groups(groups):
    assert all(G.is_monomial() for G in groups.values())
    hadamard = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    assert not generate_group([hadamard]).is_monomial()
