"""
Test Toeplitz matrices, transfer identities and the Brown-Halmos check
"""
import numpy as np
import pytest

from quotient_hardy.core.errors import ConfigError
from quotient_hardy.core.hardy import QuotientSpace, gamma
from quotient_hardy.core.invariants import annotated_characters
from quotient_hardy.core.poly_engine import MixedPolynomial
from quotient_hardy.core.toeplitz import (
    apply_toeplitz_ambient,
    apply_toeplitz_quotient,
    check_brown_halmos,
    check_commuting_transfer,
    check_higher_isotypic_invariance,
    check_intertwining,
    check_module_invariance,
    check_product_transfer,
    check_reducing,
    finite_section_singular_values,
    is_inner,
    lift_symbol,
    quotient_toeplitz_intrinsic,
    toeplitz_matrix,
)
from quotient_hardy.models import FAIL, PASS, PRECONDITION_VIOLATED


def w(d, i):
    return MixedPolynomial.variable(d, i)


def characters_of(Q):
    return annotated_characters(Q.group, Q.hyperplanes, Q.eps)


def test_lift_symbol(s2_sign):
    pair = lift_symbol(w(2, 0).conjugate() * w(2, 1), s2_sign.basic_map)
    z1, z2 = w(2, 0), w(2, 1)
    assert pair.invariant
    assert pair.lifted_symbol.allclose((z1 + z2).conjugate() * z1 * z2)


def test_identity_symbol_gives_identity_matrix(s2_sign):
    T = toeplitz_matrix(s2_sign, MixedPolynomial.one(2), 4)
    assert np.allclose(T.matrix, np.eye(T.size))
    assert T.exactness_mask.all()


def test_shift_matrix_entries(s2_sign):
    T = toeplitz_matrix(s2_sign, w(2, 0), 3)
    reps = [tuple(e.representative) for e in T.basis]
    # T_{w1} e_(1,0) = w1 = e_(2,0)
    assert T.matrix[reps.index((2, 0)), reps.index((1, 0))] == pytest.approx(1.0)
    assert T.matrix[reps.index((1, 0)), reps.index((2, 0))] == pytest.approx(0.0)


def test_exactness_mask_tracks_symbol_degree(s2_sign):
    T = toeplitz_matrix(s2_sign, w(2, 0), 3)
    degrees = [sum(e.representative) for e in T.basis]
    for k, degree in enumerate(degrees):
        assert T.exactness_mask[:, k].all() == (degree + 1 <= 3)
    assert list(T.exact_columns()) == [k for k, degree in enumerate(degrees) if degree <= 2]


@pytest.mark.parametrize("model", ['polydisc', 'ball'])
def test_adjoint_symbol_gives_adjoint_matrix(s3, model):
    Q = QuotientSpace.build(s3, character='sign', model=model)
    u = w(3, 0) * w(3, 1).conjugate() + 2 * w(3, 2)
    T = toeplitz_matrix(Q, u, 5).matrix
    T_adjoint = toeplitz_matrix(Q, u.conjugate(), 5).matrix
    assert np.allclose(T_adjoint, T.conj().T, atol=1e-10)


def test_analytic_symbol_multiplies(s2_sign):
    e = s2_sign.basis(3).elements[1]
    u = w(2, 1)
    assert apply_toeplitz_quotient(s2_sign, u, e).allclose(u * e, 1e-9)


def test_gamma_and_intrinsic_definitions_agree(s2_sign):
    u = w(2, 0).conjugate() + w(2, 1)
    for e in s2_sign.basis(4).elements:
        via_gamma = apply_toeplitz_quotient(s2_sign, u, e)
        assert quotient_toeplitz_intrinsic(s2_sign, u, e).allclose(via_gamma, 1e-9)
        lifted = lift_symbol(u, s2_sign.basic_map)
        assert gamma(s2_sign, via_gamma).allclose(apply_toeplitz_ambient(s2_sign.model, lifted, gamma(s2_sign, e)), 1e-9)


def test_intertwining_report(s2_sign):
    report = check_intertwining(s2_sign, w(2, 0) + w(2, 0).conjugate(), 4)
    assert report.verdict == PASS
    assert report.exact_region_size == len(s2_sign.basis(4))


def test_product_transfer_holds_for_coanalytic_left_factor(s2_sign):
    u, v = w(2, 0).conjugate(), w(2, 0)
    report = check_product_transfer(s2_sign, characters_of(s2_sign), u, v, u * v, 3)
    assert report.verdict == PASS
    assert report.details['consistent']
    assert set(report.details['spaces']) == {'ambient', 'trivial', 'sign'}


def test_product_transfer_fails_everywhere_together(s2_sign):
    u, v = w(2, 0), w(2, 0).conjugate()
    report = check_product_transfer(s2_sign, characters_of(s2_sign), u, v, u * v, 3)
    assert report.verdict == FAIL
    assert report.details['consistent']
    assert all(entry['verdict'] == FAIL for entry in report.details['spaces'].values())


def test_analytic_symbols_commute(wreath):
    Q = QuotientSpace.build(wreath, character='sign')
    report = check_commuting_transfer(Q, characters_of(Q), w(2, 0), w(2, 1), 3)
    assert report.verdict == PASS
    assert report.details['consistent']


def test_symbol_and_conjugate_do_not_commute(s2_sign):
    report = check_commuting_transfer(s2_sign, characters_of(s2_sign), w(2, 0), w(2, 0).conjugate(), 3)
    assert report.verdict == FAIL
    assert report.details['consistent']


def test_reducing_for_invariant_symbol(s3):
    Q = QuotientSpace.build(s3, character='sign')
    pair = lift_symbol(w(3, 0).conjugate() * w(3, 2), Q.basic_map)
    report = check_reducing(Q, pair, 3)
    assert report.verdict == PASS
    assert report.exact_region_size == 20


def test_reducing_needs_invariant_symbol(s2_sign):
    report = check_reducing(s2_sign, w(2, 0).conjugate(), 3)
    assert report.verdict == PRECONDITION_VIOLATED


def test_module_invariance(wreath):
    for chi in annotated_characters(wreath, QuotientSpace.build(wreath).hyperplanes):
        Q = QuotientSpace.build(wreath, character=chi)
        pair = lift_symbol(w(2, 0).conjugate() + w(2, 1), Q.basic_map)
        report = check_module_invariance(Q, pair, 8)
        assert report.verdict == PASS
        assert 'identity_deviation' in report.details


def test_higher_isotypic_parts_reduce(s3):
    Q = QuotientSpace.build(s3, character='sign')
    pair = lift_symbol(w(3, 1).conjugate() + w(3, 0), Q.basic_map)
    report = check_higher_isotypic_invariance(Q, characters_of(Q), pair, 3)
    assert report.verdict == PASS
    assert report.details['nonzero_components'] > 0


def test_inner_components():
    z1, z2 = w(2, 0), w(2, 1)
    assert is_inner(z1 * z2)
    assert is_inner(z1 ** 3)
    assert not is_inner(z1 + z2)


def test_brown_halmos_on_symmetric_group(s2_sign):
    u = MixedPolynomial.one(2) + w(2, 0) + w(2, 1).conjugate()
    report = check_brown_halmos(s2_sign, u, 5)
    assert report.verdict == PASS
    first, second = report.details['coordinates']
    assert not first['inner']
    assert second['inner']
    assert first['general_deviation'] < 1e-10
    assert second['literal_deviation'] < 1e-10
    # theta_1 = z1 + z2 is not inner, so the literal identity is off
    assert first['literal_deviation'] > 0.1


def test_brown_halmos_literal_for_cyclic_group(groups):
    Q = QuotientSpace.build(groups['cyclic2_2'], character='sign')
    report = check_brown_halmos(Q, w(2, 0).conjugate() * w(2, 1), 6)
    assert report.verdict == PASS
    assert all(entry['inner'] for entry in report.details['coordinates'])


def test_brown_halmos_needs_polydisc(s3):
    Q = QuotientSpace.build(s3, character='sign', model='ball')
    with pytest.raises(ConfigError):
        check_brown_halmos(Q, w(3, 0), 4)


def test_finite_section_singular_values(s2_sign):
    T = toeplitz_matrix(s2_sign, MixedPolynomial.one(2) * 2, 3)
    assert finite_section_singular_values(T, 2) == pytest.approx([2.0, 2.0])
    with pytest.raises(ConfigError):
        finite_section_singular_values(T, T.size + 1)


def _pieri(representative):
    # s_1 * s_lambda in two variables, representatives are lambda + (1, 0)
    m1, m2 = representative
    out = {(m1 + 1, m2)}
    if m2 + 1 < m1:
        out.add((m1, m2 + 1))
    return out


def test_shift_matrix_follows_pieri_rule(s2_sign):
    T = toeplitz_matrix(s2_sign, w(2, 0), 8)
    reps = [tuple(e.representative) for e in T.basis]
    checked = 0
    for k, source in enumerate(reps):
        for j, target in enumerate(reps):
            if not T.exactness_mask[j, k]:
                continue
            expected = 1.0 if target in _pieri(source) else 0.0
            assert T.matrix[j, k] == pytest.approx(expected, abs=1e-9)
            checked += 1
    assert checked > len(reps)


def test_shift_norm_is_bounded_by_symbol(s2_sign):
    T = toeplitz_matrix(s2_sign, w(2, 0), 10)
    top = finite_section_singular_values(T, 1)[0]
    assert 1.0 < top <= 2.0 + 1e-9
