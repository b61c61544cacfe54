"""
Reflecting hyperplanes, generating polynomials and basic polynomial maps
"""
import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from sympy import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

from .errors import (
    FactorizationFails,
    InvalidHsop,
    NoExponent,
    NotHolomorphic,
    NotInvariant,
    NotReflectionGroup,
    SolveFailed,
)
from .group_core import (
    is_pseudoreflection_group,
    one_dim_characters,
    pseudoreflections,
    root_of_unity,
    sign_character,
    trivial_character,
)
from .poly_engine import (
    MixedPolynomial,
    PolynomialMap,
    act,
    jacobian_det,
)
from .tolerances import DEFAULT_TOLERANCES

logger = logging.getLogger(__name__)


@dataclass(eq=False)
class HyperplaneData:
    """Reflecting hyperplanes H_i = ker(l_i) with their cyclic fixers"""
    linear_forms: list
    coefficients: list
    orders: list
    generators: list
    members: list
    dimension: int

    @property
    def count(self):
        return len(self.linear_forms)

    def to_dict(self):
        return {
            'count': self.count,
            'hyperplanes': [
                {
                    'form': form.to_json(),
                    'order': m,
                    'generator': a,
                    'reflections': list(members),
                }
                for form, m, a, members in zip(self.linear_forms, self.orders, self.generators, self.members)
            ],
        }


def _canonical_form(vector, eps):
    vector = np.array(vector, dtype=complex)
    lead = np.flatnonzero(np.abs(vector) > eps)[0]
    vector = vector / vector[lead]
    re = np.where(np.abs(vector.real) < eps, 0.0, vector.real)
    im = np.where(np.abs(vector.imag) < eps, 0.0, vector.imag)
    return re + 1j * im


def _sort_key(coefficients, eps):
    support = tuple(int(k) for k in np.flatnonzero(np.abs(coefficients) > eps))
    values = tuple((round(c.real, 9), round(c.imag, 9)) for c in coefficients)
    return (len(support), support, values)


def hyperplanes(G, eps=DEFAULT_TOLERANCES.eps):
    """Group the pseudoreflections of G by the hyperplane they fix"""
    if not is_pseudoreflection_group(G, eps):
        raise NotReflectionGroup("group is not generated by its pseudoreflections")
    identity = np.eye(G.dimension)
    groups = []
    for idx in pseudoreflections(G, eps):
        _, _, vh = np.linalg.svd(identity - G[idx].matrix)
        coefficients = _canonical_form(vh[0], eps)
        for entry in groups:
            if np.allclose(entry['coefficients'], coefficients, atol=eps * 10, rtol=0):
                entry['members'].append(idx)
                break
        else:
            groups.append({'coefficients': coefficients, 'members': [idx]})

    groups.sort(key=lambda entry: _sort_key(entry['coefficients'], eps))
    forms, coefficient_list, orders, generators, members = [], [], [], [], []
    for entry in groups:
        m = len(entry['members']) + 1
        target = root_of_unity(m)
        dets = [G.determinants[i] for i in entry['members']]
        best = int(np.argmin([abs(det - target) for det in dets]))
        if abs(dets[best] - target) > 1e3 * eps:
            logger.warning("no reflection with determinant exp(2 pi i / %d) on hyperplane %s", m, entry['coefficients'])
        forms.append(MixedPolynomial.linear_form(entry['coefficients']))
        coefficient_list.append(entry['coefficients'])
        orders.append(m)
        generators.append(entry['members'][best])
        members.append(tuple(entry['members']))
    logger.debug("found %d reflecting hyperplanes", len(forms))
    return HyperplaneData(forms, coefficient_list, orders, generators, members, G.dimension)


def character_exponents(G, H, chi, eps=DEFAULT_TOLERANCES.eps):
    """(c_1..c_t) with chi(a_i) = det(a_i)^{c_i}, each c_i least in [0, m_i)"""
    exponents = []
    for a, m in zip(H.generators, H.orders):
        det = G.determinants[a]
        value = chi(a)
        for c in range(m):
            if abs(value - det ** c) < eps * 10:
                exponents.append(c)
                break
        else:
            raise NoExponent(f"chi({a}) = {value} is not a power of det = {det}")
    return tuple(exponents)


def annotated_characters(G, H, eps=DEFAULT_TOLERANCES.eps):
    """one_dim_characters with exponents and names, sorted by exponent tuple"""
    sign = sign_character(G)
    characters = one_dim_characters(G, eps)
    for chi in characters:
        chi.exponents = character_exponents(G, H, chi, eps)
    characters.sort(key=lambda chi: chi.exponents)
    for k, chi in enumerate(characters):
        if not any(chi.exponents):
            chi.name = 'trivial'
        elif chi.allclose(sign, eps * 10):
            chi.name = 'sign'
        else:
            chi.name = f'chi{k}'
    return characters


def generating_polynomial(H, chi):
    """l_chi = prod l_i^{c_i}"""
    if chi.exponents is None:
        raise NoExponent("character exponents have not been computed")
    result = MixedPolynomial.one(H.dimension)
    for form, c in zip(H.linear_forms, chi.exponents):
        if c:
            result = result * form ** c
    return result


def elementary_symmetric(polys, k):
    dimension = polys[0].dimension
    total = MixedPolynomial.zero(dimension)
    for combo in itertools.combinations(polys, k):
        term = MixedPolynomial.one(dimension)
        for p in combo:
            term = term * p
        total = total + term
    return total


@dataclass(eq=False)
class BasicMap:
    """A verified basic polynomial map theta with a cache of theta^alpha"""
    map: PolynomialMap
    source: str
    group: object
    _powers: dict = field(default_factory=dict, repr=False)
    _exact_powers: dict = field(default_factory=dict, repr=False)

    @property
    def dimension(self):
        return self.map.dimension

    @property
    def degrees(self):
        return self.map.degrees

    def theta_power(self, alpha):
        """theta^alpha = prod theta_i^{alpha_i}"""
        alpha = tuple(alpha)
        if alpha not in self._powers:
            nonzero = [i for i, k in enumerate(alpha) if k]
            if not nonzero:
                value = MixedPolynomial.one(self.map.source_dimension)
            else:
                i = nonzero[-1]
                lower = tuple(k - 1 if j == i else k for j, k in enumerate(alpha))
                value = self.theta_power(lower) * self.map.components[i]
            self._powers[alpha] = value
        return self._powers[alpha]

    @cached_property
    def exact_ring(self):
        names = ','.join(f'z{i + 1}' for i in range(self.map.source_dimension))
        R, *_ = ring(names, QQ, grlex)
        return R

    @cached_property
    def exact_components(self):
        """Components over QQ; None when a coefficient is not real"""
        components = []
        for theta in self.map.components:
            if any(c.imag != 0 for c in theta.terms.values()):
                return None
            components.append(_rational_poly(self.exact_ring, {a: c.real for (a, _), c in theta.terms.items()}))
        return components

    def exact_power(self, alpha):
        alpha = tuple(alpha)
        if alpha not in self._exact_powers:
            nonzero = [i for i, k in enumerate(alpha) if k]
            if not nonzero:
                value = self.exact_ring.one
            else:
                i = nonzero[-1]
                lower = tuple(k - 1 if j == i else k for j, k in enumerate(alpha))
                value = self.exact_power(lower) * self.exact_components[i]
            self._exact_powers[alpha] = value
        return self._exact_powers[alpha]

    def to_dict(self):
        return {
            'source': self.source,
            'degrees': list(self.map.degrees),
            'components': self.map.to_json(),
        }


def _builtin_components(G):
    d = G.dimension
    variables = [MixedPolynomial.variable(d, i) for i in range(d)]
    if G.family_tag == 'symmetric':
        return [elementary_symmetric(variables, k) for k in range(1, d + 1)]
    if G.family_tag == 'cyclic':
        return [z ** n for z, n in zip(variables, G.family_params['orders'])]
    if G.family_tag == 'wreath':
        m = G.family_params['m']
        powers = [z ** m for z in variables]
        return [elementary_symmetric(powers, k) for k in range(1, d + 1)]
    raise InvalidHsop(f"no built-in basic map for family {G.family_tag!r}; supply one")


def _verify_map(G, theta, eps):
    if theta.dimension != G.dimension or theta.source_dimension != G.dimension:
        raise InvalidHsop(f"basic map needs {G.dimension} components in {G.dimension} variables")
    for i, component in enumerate(theta.components):
        scale = 1.0 + component.max_abs()
        for element in G.elements:
            if act(element, component, eps).distance(component) > eps * scale:
                raise InvalidHsop(f"component {i + 1} is not G-invariant")
    if int(np.prod(theta.degrees)) != G.order:
        raise InvalidHsop(f"degree product {int(np.prod(theta.degrees))} differs from |G| = {G.order}")
    if jacobian_det(theta).is_zero:
        raise InvalidHsop("Jacobian determinant vanishes identically")


def basic_map(G, user_map=None, eps=DEFAULT_TOLERANCES.eps):
    """Built-in hsop for the named families, or a verified user-supplied map"""
    if user_map is None:
        theta = PolynomialMap.from_components(_builtin_components(G))
        return BasicMap(map=theta, source='builtin', group=G)
    if not isinstance(user_map, PolynomialMap):
        user_map = PolynomialMap.from_components(user_map)
    _verify_map(G, user_map, eps)
    return BasicMap(map=user_map, source='user', group=G)


def verify_jacobian_factorization(B, H, eps=DEFAULT_TOLERANCES.eps):
    """c with J_theta = c * prod l_i^{m_i - 1}"""
    jacobian = jacobian_det(B.map)
    target = MixedPolynomial.one(B.map.source_dimension)
    for form, m in zip(H.linear_forms, H.orders):
        target = target * form ** (m - 1)
    if jacobian.is_zero:
        raise FactorizationFails("Jacobian determinant is identically zero")
    key = max(target.terms, key=lambda k: abs(target.terms[k]))
    c = jacobian.terms.get(key, 0j) / target.terms[key]
    residual = (jacobian - target * c).max_abs()
    if abs(c) < eps or residual > eps * (1.0 + jacobian.max_abs()):
        raise FactorizationFails(f"J_theta - c * prod l_i^(m_i-1) has residual {residual:.3e}")
    return c


def is_relative_invariant(G, f, chi, eps=DEFAULT_TOLERANCES.eps):
    """f(sigma z) = chi(sigma) f(z) for every sigma"""
    scale = 1.0 + f.max_abs()
    for idx, element in enumerate(G.elements):
        moved = act(G[G.inverse_of(idx)], f, eps)
        if moved.distance(f * chi(idx)) > eps * scale:
            return False
    return True


def weighted_exponents(degrees, n):
    """alpha with sum alpha_i * degrees[i] = n"""
    if len(degrees) == 1:
        if n % degrees[0] == 0:
            yield (n // degrees[0],)
        return
    for k in range(n // degrees[0], -1, -1):
        for rest in weighted_exponents(degrees[1:], n - k * degrees[0]):
            yield (k,) + rest


def _rational_poly(R, coefficients):
    return R.from_dict({a: QQ(*float(c).as_integer_ratio()) for a, c in coefficients.items() if c != 0})


def _leading_exponents(B, alphas):
    """{lead monomial of theta^alpha: alpha}, or None when two alphas share a lead"""
    heads = [component.LM for component in B.exact_components]
    leads = {}
    for alpha in alphas:
        lead = tuple(sum(k * head[j] for k, head in zip(alpha, heads)) for j in range(len(heads[0])))
        if lead in leads:
            return None
        leads[lead] = alpha
    return leads


def _reduce_part(p, B, leads):
    solution, remainder = {}, 0.0
    R = B.exact_ring
    while p:
        lead, c = p.LM, p.LC
        alpha = leads.get(lead)
        if alpha is None:
            remainder = max(remainder, abs(float(c)))
            p = p - R.from_dict({lead: c})
            continue
        power = B.exact_power(alpha)
        q = c / power.LC
        solution[alpha] = solution.get(alpha, 0) + q
        p = p - power * q
    return solution, remainder


def _reduce_component(component, B, n, tol):
    """theta-coordinates by grlex leading-term reduction over QQ; None when the map does not allow it"""
    if B.exact_components is None:
        return None
    alphas = list(weighted_exponents(B.degrees, n))
    leads = _leading_exponents(B, alphas) if alphas else None
    if leads is None:
        return None
    R = B.exact_ring
    solution = {alpha: 0j for alpha in alphas}
    worst = 0.0
    for unit, part in ((1.0, 'real'), (1j, 'imag')):
        coefficients = {a: getattr(c, part) for (a, _), c in component.terms.items()}
        found, remainder = _reduce_part(_rational_poly(R, coefficients), B, leads)
        worst = max(worst, remainder)
        for alpha, q in found.items():
            solution[alpha] += unit * float(q)
    if worst > tol.div * (1.0 + component.max_abs()):
        logger.debug("degree-%d reduction left %.3e; falling back to least squares", n, worst)
        return None
    return {alpha: c for alpha, c in solution.items() if c != 0}


def _least_squares_component(component, B, n, tol):
    alphas = list(weighted_exponents(B.degrees, n))
    if not alphas:
        raise SolveFailed(f"no theta-monomial has degree {n}")
    columns = [B.theta_power(alpha) for alpha in alphas]
    rows = sorted(set(component.terms).union(*(col.terms for col in columns)))
    row_index = {key: r for r, key in enumerate(rows)}
    A = np.zeros((len(rows), len(columns)), dtype=complex)
    for j, col in enumerate(columns):
        for key, c in col.terms.items():
            A[row_index[key], j] = c
    b = np.zeros(len(rows), dtype=complex)
    for key, c in component.terms.items():
        b[row_index[key]] = c

    norms = np.linalg.norm(A, axis=0)
    x_scaled, *_ = np.linalg.lstsq(A / norms, b, rcond=None)
    x = x_scaled / norms
    residual = np.max(np.abs(A @ x - b))
    bound = tol.div * (1.0 + np.max(np.abs(A) @ np.abs(x)))
    if residual > bound:
        raise SolveFailed(f"degree-{n} rewrite residual {residual:.3e} exceeds {bound:.3e}")
    return dict(zip(alphas, x))


def _solve_component(component, B, n, tol):
    solution = _reduce_component(component, B, n, tol)
    if solution is not None:
        return solution
    return _least_squares_component(component, B, n, tol)


def rewrite_in_theta(p, B, tol=DEFAULT_TOLERANCES, check=True):
    """p_hat in quotient variables w with p_hat o theta = p"""
    if not p.is_holomorphic:
        raise NotHolomorphic("only holomorphic invariants can be rewritten in theta")
    if check and not is_relative_invariant(B.group, p, trivial_character(B.group), tol.eps):
        raise NotInvariant("polynomial is not G-invariant")
    d = B.dimension
    zeros = (0,) * d
    terms = {}
    for n, component in p.homogeneous_components().items():
        if n == 0:
            terms[(zeros, zeros)] = component.coefficient(zeros)
            continue
        solution = _solve_component(component, B, n, tol)
        for alpha, c in solution.items():
            terms[(alpha, zeros)] = c
    return MixedPolynomial(d, terms)

