"""
Toeplitz operators with mixed-polynomial symbols on H^2(Omega) and on the
quotient spaces H^2_chi(theta(Omega)), their truncated matrices and the
transfer identities between the two sides
"""
import logging
from dataclasses import dataclass, replace

import numpy as np
from scipy.linalg import svdvals

from quotient_hardy.models import PASS, VerificationReport

from .errors import ConfigError, NotDivisible
from .group_core import trivial_character
from .hardy import (
    complement_project,
    gamma,
    gamma_inverse,
    inner_product,
    isotypic_project,
    quotient_project,
    szego_project,
    torus_reduce,
)
from .invariants import weighted_exponents
from .poly_engine import MixedPolynomial, act, exact_divide, exponents_up_to
from .tolerances import DEFAULT_TOLERANCES

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SymbolPair:
    """u on the quotient side and its lift u(theta, conj(theta))"""
    quotient_symbol: MixedPolynomial
    lifted_symbol: MixedPolynomial
    invariant: bool = True

    @property
    def scale(self):
        return max(1.0, self.quotient_symbol.l1_norm())

    def to_dict(self):
        return {
            'u': self.quotient_symbol.to_json(),
            'lifted': self.lifted_symbol.to_json(),
            'invariant': self.invariant,
        }


@dataclass(eq=False)
class ToeplitzTruncation:
    matrix: np.ndarray
    basis: object
    symbol: SymbolPair
    degree_cutoff: int
    exactness_mask: np.ndarray

    @property
    def size(self):
        return self.matrix.shape[0]

    def exact_columns(self):
        return np.flatnonzero(self.exactness_mask.all(axis=0))

    def to_dict(self):
        return {
            'cutoff': self.degree_cutoff,
            'representatives': [list(e.representative) for e in self.basis],
            'matrix': [[[round(x.real, 12) + 0.0, round(x.imag, 12) + 0.0] for x in row] for row in self.matrix],
            'exactness_mask': self.exactness_mask.astype(int).tolist(),
        }


def is_invariant(G, f, eps):
    scale = 1.0 + f.max_abs()
    return all(act(element, f, eps).distance(f) <= eps * scale for element in G.elements)


def lift_symbol(u, B, eps=DEFAULT_TOLERANCES.eps):
    """u_tilde = u(theta, conj(theta)); flags a lift that is not G-invariant"""
    if isinstance(u, SymbolPair):
        return u
    lifted = MixedPolynomial.zero(B.map.source_dimension)
    for (alpha, beta), c in u.terms.items():
        term = B.theta_power(alpha)
        if any(beta):
            term = term * B.theta_power(beta).conjugate()
        lifted = lifted + term * c
    return SymbolPair(u, lifted, is_invariant(B.group, lifted, eps))


def apply_toeplitz_ambient(M, symbol, f):
    """T_u f = P(u f) on H^2(Omega)"""
    if isinstance(symbol, SymbolPair):
        symbol = symbol.lifted_symbol
    return szego_project(M, symbol * f)


def apply_toeplitz_quotient(Q, u, f):
    """T_u f on H^2_chi(theta(Omega)) defined through Gamma T_u = T_u_tilde Gamma"""
    pair = lift_symbol(u, Q.basic_map, Q.eps)
    image = apply_toeplitz_ambient(Q.model, pair, gamma(Q, f))
    return gamma_inverse(Q, image, check=False)


def quotient_toeplitz_intrinsic(Q, u, f):
    """T_u f = P(u f) computed with the pullback inner product of the quotient space"""
    if isinstance(u, SymbolPair):
        u = u.quotient_symbol
    return quotient_project(Q, u * f)


def _symbol_net_degree(pair):
    return max(pair.lifted_symbol.net_degree(), 0)


def toeplitz_matrix(Q, u, degree_cutoff):
    """<T_u e_k, e_j> over the quotient basis with lifts of degree <= degree_cutoff"""
    pair = lift_symbol(u, Q.basic_map, Q.eps)
    basis = Q.basis(degree_cutoff)
    lifts = basis.lifts
    n = len(lifts)
    matrix = np.zeros((n, n), dtype=complex)
    mask = np.zeros((n, n), dtype=bool)
    reach = _symbol_net_degree(pair)
    for k, lift in enumerate(lifts):
        image = apply_toeplitz_ambient(Q.model, pair, lift)
        for j, other in enumerate(lifts):
            matrix[j, k] = inner_product(Q.model, image, other)
        mask[:, k] = sum(basis.entries[k].representative) + reach <= degree_cutoff
    return ToeplitzTruncation(matrix, basis, pair, degree_cutoff, mask)


def _gap(actual, expected):
    return (actual - expected).max_abs() / max(1.0, expected.max_abs())


def _spaces(Q, characters):
    return [(chi.name, replace(Q, character=chi, generating=None, _bases={})) for chi in characters]


def _ambient_basis(d, degree):
    return [MixedPolynomial.monomial(d, a) for a in exponents_up_to(d, degree)]


def _transfer_report(name, Q, characters, cutoff, ambient_op, quotient_op, scale):
    tol = Q.tolerances.operator
    per_space = {}
    tested = 0

    deviation = 0.0
    for f in _ambient_basis(Q.group.dimension, cutoff):
        lhs, rhs = ambient_op(f)
        deviation = max(deviation, _gap(lhs, rhs) / scale)
        tested += 1
    per_space['ambient'] = {'max_deviation': deviation, 'verdict': PASS if deviation < tol else 'FAIL'}

    for label, space in _spaces(Q, characters):
        deviation = 0.0
        for e in space.basis(cutoff).elements:
            lhs, rhs = quotient_op(space, e)
            deviation = max(deviation, _gap(lhs, rhs) / scale)
            tested += 1
        per_space[label] = {'max_deviation': deviation, 'verdict': PASS if deviation < tol else 'FAIL'}

    worst = max(entry['max_deviation'] for entry in per_space.values())
    verdicts = {entry['verdict'] for entry in per_space.values()}
    details = {'spaces': per_space, 'consistent': len(verdicts) == 1}
    return VerificationReport.from_deviation(name, worst, tol, tested, details)


def check_product_transfer(Q, characters, u, v, q, cutoff):
    """T_u T_v = T_q on the ambient space and on every listed quotient space"""
    B = Q.basic_map
    pu, pv, pq = (lift_symbol(s, B, Q.eps) for s in (u, v, q))
    M = Q.model
    scale = max(pu.scale * pv.scale, pq.scale)

    def ambient(f):
        return apply_toeplitz_ambient(M, pu, apply_toeplitz_ambient(M, pv, f)), apply_toeplitz_ambient(M, pq, f)

    def quotient(space, e):
        return apply_toeplitz_quotient(space, pu, apply_toeplitz_quotient(space, pv, e)), apply_toeplitz_quotient(space, pq, e)

    return _transfer_report('product-transfer', Q, characters, cutoff, ambient, quotient, scale)


def check_commuting_transfer(Q, characters, u, v, cutoff):
    """T_u T_v = T_v T_u on the ambient space and on every listed quotient space"""
    B = Q.basic_map
    pu, pv = (lift_symbol(s, B, Q.eps) for s in (u, v))
    M = Q.model
    scale = pu.scale * pv.scale

    def ambient(f):
        return (apply_toeplitz_ambient(M, pu, apply_toeplitz_ambient(M, pv, f)),
                apply_toeplitz_ambient(M, pv, apply_toeplitz_ambient(M, pu, f)))

    def quotient(space, e):
        return (apply_toeplitz_quotient(space, pu, apply_toeplitz_quotient(space, pv, e)),
                apply_toeplitz_quotient(space, pv, apply_toeplitz_quotient(space, pu, e)))

    return _transfer_report('commute-transfer', Q, characters, cutoff, ambient, quotient, scale)


def _ambient_symbol(Q, symbol):
    if isinstance(symbol, SymbolPair):
        return symbol.lifted_symbol, symbol.scale
    return symbol, max(1.0, symbol.l1_norm())


def check_reducing(Q, symbol, degree):
    """P_chi H^2 reduces T_u_tilde: T(P_chi f) = P_chi(T f) on monomials"""
    G, chi, M = Q.group, Q.character, Q.model
    lifted, scale = _ambient_symbol(Q, symbol)
    if not is_invariant(G, lifted, Q.eps):
        return VerificationReport.precondition_violated('reducing', 'symbol is not G-invariant')
    deviation, tested = 0.0, 0
    for f in _ambient_basis(G.dimension, degree):
        lhs = apply_toeplitz_ambient(M, lifted, isotypic_project(G, chi, f, Q.eps))
        rhs = isotypic_project(G, chi, apply_toeplitz_ambient(M, lifted, f), Q.eps)
        deviation = max(deviation, _gap(lhs, rhs) / scale)
        tested += 1
    return VerificationReport.from_deviation('reducing', deviation, Q.tolerances.operator, tested,
                                             {'character': chi.name})


def _invariant_basis(B, degree):
    d = B.dimension
    out = []
    for n in range(degree + 1):
        for alpha in (weighted_exponents(B.degrees, n) if n else [(0,) * d]):
            out.append(B.theta_power(alpha))
    return out


def check_module_invariance(Q, symbol, degree):
    """T_u_tilde(l_chi h) is l_chi times a G-invariant polynomial for invariant h"""
    G, M = Q.group, Q.model
    lifted, scale = _ambient_symbol(Q, symbol)
    if not is_invariant(G, lifted, Q.eps):
        return VerificationReport.precondition_violated('module-invariance', 'symbol is not G-invariant')
    trivial = trivial_character(G)
    deviation, identity_deviation, tested = 0.0, 0.0, 0
    for h in _invariant_basis(Q.basic_map, degree):
        image = apply_toeplitz_ambient(M, lifted, Q.generating * h)
        try:
            quotient = exact_divide(image, Q.generating, Q.tolerances)
        except NotDivisible as e:
            deviation = max(deviation, (e.remainder_norm or 1.0) / scale)
            tested += 1
            continue
        spread = max(_gap(act(element, quotient, Q.eps), quotient) for element in G.elements)
        deviation = max(deviation, spread / scale)
        expected = Q.generating * isotypic_project(G, trivial, szego_project(M, lifted * h), Q.eps)
        identity_deviation = max(identity_deviation, _gap(image, expected) / scale)
        tested += 1
    return VerificationReport.from_deviation(
        'module-invariance', deviation, Q.tolerances.operator, tested,
        {'character': Q.character.name, 'identity_deviation': identity_deviation},
    )


def is_inner(theta_i, eps=DEFAULT_TOLERANCES.eps):
    """|theta_i| = 1 on the torus"""
    laurent = torus_reduce(theta_i * theta_i.conjugate())
    zeros = (0,) * theta_i.dimension
    rest = [abs(v) for k, v in laurent.items() if k != zeros]
    return abs(laurent.get(zeros, 0j) - 1.0) < eps and max(rest, default=0.0) < eps


def _multiplication_matrix(Q, basis, component, cutoff):
    lifts = basis.lifts
    n = len(lifts)
    matrix = np.zeros((n, n), dtype=complex)
    exact = np.zeros(n, dtype=bool)
    step = component.degree()
    for k, lift in enumerate(lifts):
        image = component * lift
        for j, other in enumerate(lifts):
            matrix[j, k] = inner_product(Q.model, image, other)
        exact[k] = sum(basis.entries[k].representative) + step <= cutoff
    return matrix, exact


def check_brown_halmos(Q, u, cutoff):
    """M_i^* T_u M_i against T_{|w_i|^2 u} for every coordinate, and against T_u when theta_i is inner"""
    if Q.model.kind != 'polydisc':
        raise ConfigError("the Brown-Halmos check is defined for the polydisc model only")
    pair = lift_symbol(u, Q.basic_map, Q.eps)
    d = Q.basic_map.dimension
    truncation = toeplitz_matrix(Q, pair, cutoff)
    basis = truncation.basis
    T = truncation.matrix
    tol = Q.tolerances.operator
    coordinates = []
    worst, region = 0.0, 0
    for i, component in enumerate(Q.basic_map.map.components):
        Mi, exact = _multiplication_matrix(Q, basis, component, cutoff)
        compressed = Mi.conj().T @ T @ Mi
        w_i = MixedPolynomial.variable(d, i)
        weighted = toeplitz_matrix(Q, pair.quotient_symbol * w_i * w_i.conjugate(), cutoff).matrix
        joint = np.outer(exact, exact)
        size = int(joint.sum())
        general = float(np.max(np.abs(compressed - weighted)[joint], initial=0.0)) / pair.scale
        literal = float(np.max(np.abs(compressed - T)[joint], initial=0.0)) / pair.scale
        inner = is_inner(component, Q.eps)
        coordinates.append({
            'coordinate': i + 1,
            'inner': inner,
            'general_deviation': general,
            'literal_deviation': literal,
            'exact_region_size': size,
        })
        worst = max(worst, general, literal if inner else 0.0)
        region += size
    return VerificationReport.from_deviation('brown-halmos', worst, tol, region,
                                             {'character': Q.character.name, 'coordinates': coordinates})


def check_intertwining(Q, u, degree):
    """Gamma-defined and intrinsic quotient T_u agree, and Gamma T_u = T_u_tilde Gamma"""
    pair = lift_symbol(u, Q.basic_map, Q.eps)
    deviation, tested = 0.0, 0
    for e in Q.basis(degree).elements:
        via_gamma = apply_toeplitz_quotient(Q, pair, e)
        intrinsic = quotient_toeplitz_intrinsic(Q, pair, e)
        ambient = apply_toeplitz_ambient(Q.model, pair, gamma(Q, e))
        deviation = max(deviation,
                        _gap(intrinsic, via_gamma) / pair.scale,
                        _gap(gamma(Q, via_gamma), ambient) / pair.scale)
        tested += 1
    return VerificationReport.from_deviation('intertwining', deviation, Q.tolerances.operator, tested,
                                             {'character': Q.character.name})


def check_higher_isotypic_invariance(Q, characters, symbol, degree):
    """T_u_tilde commutes with the projection onto the higher-dimensional isotypic parts"""
    G, M = Q.group, Q.model
    lifted, scale = _ambient_symbol(Q, symbol)
    if not is_invariant(G, lifted, Q.eps):
        return VerificationReport.precondition_violated('higher-isotypic', 'symbol is not G-invariant')
    deviation, tested, nonzero = 0.0, 0, 0
    for f in _ambient_basis(G.dimension, degree):
        rest = complement_project(G, characters, f, Q.eps)
        if not rest.is_zero:
            nonzero += 1
        lhs = apply_toeplitz_ambient(M, lifted, rest)
        rhs = complement_project(G, characters, apply_toeplitz_ambient(M, lifted, f), Q.eps)
        deviation = max(deviation, _gap(lhs, rhs) / scale)
        tested += 1
    return VerificationReport.from_deviation('higher-isotypic', deviation, Q.tolerances.operator, tested,
                                             {'nonzero_components': nonzero})


def finite_section_singular_values(T, k):
    """k largest singular values of the truncated matrix"""
    if k < 0 or k > T.size:
        raise ConfigError(f"asked for {k} singular values of a {T.size}x{T.size} truncation")
    return [float(s) for s in svdvals(T.matrix)[:k]] if T.size else []
