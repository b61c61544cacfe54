"""
Hardy spaces on the polydisc and the ball, isotypic projections and the
weighted Hardy spaces of the quotient domain theta(Omega)

The quotient side is handled through Gamma: f -> (1/sqrt|G|) * l_chi * (f o theta),
so every quotient-space inner product is computed as an exact boundary
pairing of polynomials in z and conj(z).
"""
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import numpy as np
from scipy.special import factorial

from .errors import ConfigError, NotHolomorphic, NotRelativeInvariant, PointOnZeroSet
from .group_core import sign_character
from .invariants import (
    annotated_characters,
    basic_map as build_basic_map,
    generating_polynomial,
    hyperplanes as find_hyperplanes,
    is_relative_invariant,
    rewrite_in_theta,
)
from .poly_engine import (
    MixedPolynomial,
    act,
    evaluate,
    exact_divide,
    exponents_of_degree,
    jacobian_det,
    polynomial_determinant,
)
from .tolerances import DEFAULT_TOLERANCES

logger = logging.getLogger(__name__)

MODEL_KINDS = ('polydisc', 'ball')


@lru_cache(maxsize=None)
def _sphere_moment(a, d):
    numerator = math.prod(factorial(k, exact=True) for k in a) * factorial(d - 1, exact=True)
    return numerator / factorial(sum(a) + d - 1, exact=True)


@dataclass(frozen=True)
class HardyModel:
    """H^2 of the unit polydisc (torus measure) or the unit ball (sphere measure)"""
    kind: str
    dimension: int
    eps: float = DEFAULT_TOLERANCES.eps

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ConfigError(f"model must be one of {', '.join(MODEL_KINDS)}, got {self.kind!r}")
        if self.dimension < 1:
            raise ConfigError("model dimension must be positive")

    def monomial_norm_sq(self, a):
        """<z^a, z^a>"""
        if self.kind == 'polydisc':
            return 1.0
        return _sphere_moment(tuple(a), self.dimension)

    def kernel(self, z, w):
        """Szego kernel S(z, w)"""
        z = np.asarray(z, dtype=complex)
        w = np.asarray(w, dtype=complex)
        if self.kind == 'polydisc':
            return complex(np.prod(1.0 / (1.0 - z * np.conj(w))))
        return complex((1.0 - np.vdot(w, z)) ** (-self.dimension))

    def contains(self, z):
        z = np.asarray(z, dtype=complex)
        if self.kind == 'polydisc':
            return bool(np.max(np.abs(z)) < 1.0)
        return bool(np.linalg.norm(z) < 1.0)

    def to_dict(self):
        return {'kind': self.kind, 'dimension': self.dimension}


def inner_product(M, f, g):
    """<f, g> in H^2(Omega) for holomorphic polynomials"""
    if not (f.is_holomorphic and g.is_holomorphic):
        raise NotHolomorphic("H^2 inner product needs holomorphic polynomials")
    total = 0j
    for key, c in f.terms.items():
        other = g.terms.get(key)
        if other is not None:
            total += c * other.conjugate() * M.monomial_norm_sq(key[0])
    return total


def norm(M, f):
    return float(np.sqrt(max(inner_product(M, f, f).real, 0.0)))


def boundary_integral(M, f):
    """Integral of f over the torus / sphere; only z^a conj(z)^a terms survive"""
    total = 0j
    for (a, b), c in f.terms.items():
        if a == b:
            total += c * M.monomial_norm_sq(a)
    return total


def boundary_pairing(M, f, g):
    """Integral of f * conj(g) without forming the product"""
    by_shift = {}
    for (a, b), c in g.terms.items():
        shift = tuple(x - y for x, y in zip(a, b))
        by_shift.setdefault(shift, []).append((a, b, c))
    total = 0j
    for (a, b), c in f.terms.items():
        shift = tuple(x - y for x, y in zip(a, b))
        for a2, b2, c2 in by_shift.get(shift, ()):
            # f * conj(g) term is z^(a+b2) conj(z)^(b+a2); equal exponents by the shift match
            total += c * c2.conjugate() * M.monomial_norm_sq(tuple(x + y for x, y in zip(a, b2)))
    return total


def szego_project(M, f):
    """Orthogonal projection of L^2(boundary) onto H^2, exact on mixed polynomials"""
    d = f.dimension
    zeros = (0,) * d
    out = {}
    for (a, b), c in f.terms.items():
        if all(x >= y for x, y in zip(a, b)):
            m = tuple(x - y for x, y in zip(a, b))
            weight = M.monomial_norm_sq(a) / M.monomial_norm_sq(m)
            out[(m, zeros)] = out.get((m, zeros), 0j) + c * weight
    return MixedPolynomial(d, out)


def torus_reduce(f):
    """Laurent form of f on the torus: conj(z_j) = 1 / z_j"""
    out = {}
    for (a, b), c in f.terms.items():
        shift = tuple(x - y for x, y in zip(a, b))
        out[shift] = out.get(shift, 0j) + c
    return {k: v for k, v in out.items() if abs(v) >= DEFAULT_TOLERANCES.drop}


def isotypic_project(G, chi, f, eps=DEFAULT_TOLERANCES.eps):
    """P_chi f = (1/|G|) sum_sigma chi(sigma^-1) sigma^-1(f)"""
    total = MixedPolynomial.zero(f.dimension)
    for idx, element in enumerate(G.elements):
        value = chi(idx)
        if abs(value) > 0:
            total = total + act(element, f, eps) * value
    return total / G.order


@dataclass(eq=False)
class BasisEntry:
    """One orthonormal lift with its quotient-side element e_m, rewritten in theta on first access"""
    representative: tuple
    lift: MixedPolynomial
    space: object = field(default=None, repr=False)

    @cached_property
    def element(self):
        return gamma_inverse(self.space, self.lift, check=False)

    def to_dict(self):
        return {
            'representative': list(self.representative),
            'e_m': self.element.to_json(),
            'lift': self.lift.to_json(),
        }


@dataclass(eq=False)
class QuotientBasis:
    """Orthonormal basis of H^2_chi(theta(Omega)) up to a total degree in z"""
    character: object
    entries: list
    max_degree: int

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def lifts(self):
        return [entry.lift for entry in self.entries]

    @property
    def elements(self):
        return [entry.element for entry in self.entries]

    def degrees(self):
        return [sum(entry.representative) for entry in self.entries]

    def gram(self, M):
        lifts = self.lifts
        n = len(lifts)
        matrix = np.zeros((n, n), dtype=complex)
        for j in range(n):
            for k in range(n):
                matrix[j, k] = inner_product(M, lifts[k], lifts[j])
        return matrix

    def to_dict(self):
        return {
            'character': self.character.name,
            'max_degree': self.max_degree,
            'size': len(self.entries),
            'entries': [entry.to_dict() for entry in self.entries],
        }


@dataclass(eq=False)
class QuotientSpace:
    """H^2_chi(theta(Omega)): group, hyperplanes, basic map, character and model"""
    group: object
    hyperplanes: object
    basic_map: object
    character: object
    model: HardyModel
    tolerances: object = DEFAULT_TOLERANCES
    generating: MixedPolynomial = None
    _bases: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.model.dimension != self.group.dimension:
            raise ConfigError(f"{self.model.dimension}-dimensional model for a {self.group.dimension}-dimensional group")
        if self.generating is None:
            self.generating = generating_polynomial(self.hyperplanes, self.character)

    @classmethod
    def build(cls, G, character='sign', model='polydisc', basic_map=None, H=None, tolerances=DEFAULT_TOLERANCES):
        H = H or find_hyperplanes(G, tolerances.eps)
        B = basic_map or build_basic_map(G, eps=tolerances.eps)
        if isinstance(character, (str, int)):
            character = select_character(G, H, character, tolerances.eps)
        if isinstance(model, str):
            model = HardyModel(model, G.dimension, tolerances.eps)
        return cls(group=G, hyperplanes=H, basic_map=B, character=character, model=model, tolerances=tolerances)

    @property
    def eps(self):
        return self.tolerances.eps

    @property
    def scale(self):
        return 1.0 / np.sqrt(self.group.order)

    def compose(self, f):
        """f o theta using the cached theta powers"""
        if not f.is_holomorphic:
            raise NotHolomorphic("compose needs a holomorphic polynomial in w")
        total = MixedPolynomial.zero(self.group.dimension)
        for (alpha, _), c in f.terms.items():
            total = total + self.basic_map.theta_power(alpha) * c
        return total

    def compose_mixed(self, F):
        """F(theta, conj(theta))"""
        total = MixedPolynomial.zero(self.group.dimension)
        for (alpha, beta), c in F.terms.items():
            term = self.basic_map.theta_power(alpha)
            if any(beta):
                term = term * self.basic_map.theta_power(beta).conjugate()
            total = total + term * c
        return total

    def basis(self, max_total_degree):
        """Cached quotient_onb, truncated from a larger cached basis when possible"""
        for degree, cached in self._bases.items():
            if degree >= max_total_degree:
                if degree == max_total_degree:
                    return cached
                entries = [e for e in cached.entries if sum(e.representative) <= max_total_degree]
                return QuotientBasis(self.character, entries, max_total_degree)
        basis = quotient_onb(self, max_total_degree)
        self._bases[max_total_degree] = basis
        return basis


def select_character(G, H, selector, eps=DEFAULT_TOLERANCES.eps):
    """Pick a character by index into annotated_characters, 'sign' or 'trivial'"""
    characters = annotated_characters(G, H, eps)
    if isinstance(selector, str) and selector not in ('sign', 'trivial'):
        try:
            selector = int(selector)
        except ValueError:
            raise ConfigError(f"unknown character selector {selector!r}")
    if selector == 'trivial':
        return characters[0]
    if selector == 'sign':
        sign = sign_character(G)
        for chi in characters:
            if chi.allclose(sign, eps * 10):
                return chi
        raise ConfigError("sign character not found")
    if not 0 <= selector < len(characters):
        raise ConfigError(f"character index {selector} out of range 0..{len(characters) - 1}")
    return characters[selector]


def gamma(Q, f):
    """(1/sqrt|G|) * l_chi * (f o theta)"""
    return Q.generating * Q.compose(f) * Q.scale


def gamma_inverse(Q, g, check=True):
    """sqrt|G| * rewrite_in_theta(g / l_chi)"""
    if check and not is_relative_invariant(Q.group, g, Q.character, Q.eps):
        raise NotRelativeInvariant(f"polynomial is not relative invariant for {Q.character.name}")
    quotient = exact_divide(g, Q.generating, Q.tolerances)
    return rewrite_in_theta(quotient, Q.basic_map, Q.tolerances, check=check) * np.sqrt(Q.group.order)


def lift_mixed(Q, F):
    """Gamma on mixed polynomials in (w, conj(w))"""
    return Q.generating * Q.compose_mixed(F) * Q.scale


def _orbit(G, exponent):
    d = len(exponent)
    monomial = MixedPolynomial.monomial(d, exponent)
    return {next(iter(act(element, monomial).terms))[0] for element in G.elements}


def _fix_phase(v):
    _, c = v.lex_greatest_term()
    return v * (c.conjugate() / abs(c))


def quotient_onb(Q, max_total_degree):
    """Orthonormal basis e_m of H^2_chi(theta(Omega)) with lifts of degree <= max_total_degree"""
    G, M, chi = Q.group, Q.model, Q.character
    d = G.dimension
    monomial_group = G.is_monomial()
    if not monomial_group:
        logger.warning("group is not monomial; building the quotient basis by Gram-Schmidt")
    entries = []
    for n in range(max_total_degree + 1):
        seen = set()
        accepted = []
        for m in exponents_of_degree(d, n):
            if m in seen:
                continue
            if monomial_group:
                seen |= _orbit(G, m)
            v = isotypic_project(G, chi, MixedPolynomial.monomial(d, m), Q.eps)
            if not monomial_group:
                for previous in accepted:
                    v = v - previous * inner_product(M, v, previous)
            size = norm(M, v)
            if size < np.sqrt(Q.eps) * np.sqrt(M.monomial_norm_sq(m)):
                continue
            v = _fix_phase(v / size)
            accepted.append(v)
            entries.append(BasisEntry(representative=m, lift=v, space=Q))
    logger.debug("quotient basis for %s up to degree %d has %d elements", chi.name, max_total_degree, len(entries))
    return QuotientBasis(chi, entries, max_total_degree)


def quotient_inner_product(Q, f, g, weight='generating'):
    """Pullback inner product (1/|G|) int (f o theta) conj(g o theta) |weight|^2"""
    if weight == 'generating':
        w = Q.generating
    elif weight == 'jacobian':
        w = jacobian_det(Q.basic_map.map)
    else:
        raise ConfigError(f"unknown weight {weight!r}; expected 'generating' or 'jacobian'")
    lifted_f = w * Q.compose_mixed(f)
    lifted_g = w * Q.compose_mixed(g)
    return boundary_pairing(Q.model, lifted_f, lifted_g) / Q.group.order


def quotient_project(Q, F, max_total_degree=None):
    """Orthogonal projection of F(w, conj(w)) onto H^2_chi(theta(Omega))"""
    lifted = lift_mixed(Q, F)
    if max_total_degree is None:
        max_total_degree = max(lifted.net_degree(), 0)
    result = MixedPolynomial.zero(Q.group.dimension)
    for entry in Q.basis(max_total_degree):
        coefficient = boundary_pairing(Q.model, lifted, entry.lift)
        if abs(coefficient) > 0:
            result = result + entry.element * coefficient
    return result


def isotypic_decomposition(G, H, f, characters=None, tolerances=DEFAULT_TOLERANCES):
    """{character index: f_chi} with P_chi f = l_chi * f_chi and f_chi G-invariant"""
    characters = characters or annotated_characters(G, H, tolerances.eps)
    parts = {}
    for k, chi in enumerate(characters):
        projected = isotypic_project(G, chi, f, tolerances.eps)
        parts[k] = exact_divide(projected, generating_polynomial(H, chi), tolerances)
    return parts


def complement_project(G, characters, f, eps=DEFAULT_TOLERANCES.eps):
    """f minus its one-dimensional isotypic parts"""
    rest = f
    for chi in characters:
        rest = rest - isotypic_project(G, chi, f, eps)
    return rest


def _check_point(M, z):
    z = np.asarray(z, dtype=complex).reshape(-1)
    if z.shape[0] != M.dimension:
        raise ConfigError(f"point has {z.shape[0]} coordinates, expected {M.dimension}")
    if not M.contains(z):
        raise ConfigError(f"point {z.tolist()} is not inside the {M.kind}")
    return z


def _twisted_sum(Q, z, w):
    """sum_sigma chi(sigma^-1) S(sigma z, w)"""
    G, chi = Q.group, Q.character
    total = 0j
    for idx, element in enumerate(G.elements):
        total += chi(G.inverse_of(idx)) * Q.model.kernel(element.matrix @ z, w)
    return total


def subspace_kernel(Q, z, w):
    """Reproducing kernel of P_chi H^2(Omega)"""
    z = _check_point(Q.model, z)
    w = _check_point(Q.model, w)
    return _twisted_sum(Q, z, w) / Q.group.order


def _generating_values(Q, z, w):
    lz = evaluate(Q.generating, z)
    lw = evaluate(Q.generating, w)
    if abs(lz) < Q.eps or abs(lw) < Q.eps:
        raise PointOnZeroSet("l_chi vanishes at the requested point")
    return lz, lw


def divided_subspace_kernel(Q, z, w):
    """subspace_kernel / (l_chi(z) conj(l_chi(w)))"""
    z = _check_point(Q.model, z)
    w = _check_point(Q.model, w)
    lz, lw = _generating_values(Q, z, w)
    return _twisted_sum(Q, z, w) / Q.group.order / (lz * np.conj(lw))


def quotient_kernel(Q, z, w):
    """Kernel of H^2_chi(theta(Omega)) at (theta(z), theta(w)), given fiber points z and w"""
    z = _check_point(Q.model, z)
    w = _check_point(Q.model, w)
    lz, lw = _generating_values(Q, z, w)
    return _twisted_sum(Q, z, w) / (lz * np.conj(lw))


def onb_kernel_series(Q, z, w, degree, side='subspace'):
    """Truncated sum over the quotient basis

    'subspace' sums v(z) conj(v(w)) over the lifts, 'quotient' sums e_m at theta(z)
    and theta(w), 'fiber' gets e_m(theta(z)) = sqrt|G| * v(z) / l_chi(z) from the lifts
    and needs l_chi(z), l_chi(w) nonzero.
    """
    basis = Q.basis(degree)
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if side == 'subspace':
        return sum(evaluate(v, z) * np.conj(evaluate(v, w)) for v in basis.lifts)
    if side == 'quotient':
        tz = Q.basic_map.map(z)
        tw = Q.basic_map.map(w)
        return sum(evaluate(e, tz) * np.conj(evaluate(e, tw)) for e in basis.elements)
    if side == 'fiber':
        lz, lw = _generating_values(Q, z, w)
        series = sum(evaluate(v, z) * np.conj(evaluate(v, w)) for v in basis.lifts)
        return Q.group.order * series / (lz * np.conj(lw))
    raise ConfigError(f"unknown kernel side {side!r}")


def complete_homogeneous(d, k):
    """h_k(z_1..z_d); zero for k < 0"""
    if k < 0:
        return MixedPolynomial.zero(d)
    zeros = (0,) * d
    return MixedPolynomial(d, {(a, zeros): 1.0 for a in exponents_of_degree(d, k)})


def jacobi_trudi_schur(partition, d):
    """s_lambda(z_1..z_d) = det(h_{lambda_i - i + j})"""
    parts = [int(p) for p in partition if p > 0]
    if not parts:
        return MixedPolynomial.one(d)
    n = len(parts)
    rows = [[complete_homogeneous(d, parts[i] - i + j) for j in range(n)] for i in range(n)]
    return polynomial_determinant(rows)


def schur_partition(representative):
    """lambda_j = m_j - (d - j) for a strictly decreasing exponent m"""
    d = len(representative)
    return tuple(m - (d - 1 - j) for j, m in enumerate(representative))
