"""
Finite matrix groups: closure, named families, pseudoreflections and
one-dimensional characters
"""
import itertools
import logging
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, NotFinite, Singular, UnsupportedFamily
from .tolerances import DEFAULT_TOLERANCES

logger = logging.getLogger(__name__)

DEFAULT_CLOSURE_CAP = 20000
DEFAULT_ORDER_CAP = 1000
HASH_DECIMALS = 6

FAMILIES = ('symmetric', 'cyclic', 'wreath', 'custom')


def root_of_unity(n, k=1):
    """exp(2 pi i k / n) with exactly-zero parts where they should be zero"""
    angle = 2.0 * np.pi * k / n
    re, im = np.cos(angle), np.sin(angle)
    re = 0.0 if abs(re) < 1e-15 else re
    im = 0.0 if abs(im) < 1e-15 else im
    return complex(re, im)


def _matrix_key(matrix):
    rounded = np.round(matrix, HASH_DECIMALS)
    # +0.0 folds -0.0 into 0.0
    return tuple((rounded.real + 0.0).ravel()) + tuple((rounded.imag + 0.0).ravel())


@dataclass(frozen=True, eq=False)
class GroupElement:
    matrix: np.ndarray
    inverse: np.ndarray
    order: int

    @property
    def dimension(self):
        return self.matrix.shape[0]

    @property
    def det(self):
        return complex(np.linalg.det(self.matrix))

    def to_dict(self):
        return {
            'matrix': [[[float(x.real) + 0.0, float(x.imag) + 0.0] for x in row] for row in self.matrix],
            'order': self.order,
        }


class _ElementIndex:
    """Rounded-entry hash buckets with an eps comparison inside each bucket"""

    def __init__(self, eps):
        self.eps = eps
        self.buckets = {}

    def find(self, matrix):
        for idx, candidate in self.buckets.get(_matrix_key(matrix), ()):
            if np.max(np.abs(candidate - matrix)) < self.eps:
                return idx
        return None

    def add(self, matrix, idx):
        self.buckets.setdefault(_matrix_key(matrix), []).append((idx, matrix))


@dataclass(eq=False)
class FiniteGroup:
    """Closed set of d x d matrices, identity at index 0"""
    elements: list
    dimension: int
    mult_table: np.ndarray
    family_tag: str = 'custom'
    family_params: dict = field(default_factory=dict)
    generator_indices: tuple = ()
    eps: float = DEFAULT_TOLERANCES.eps

    def __post_init__(self):
        n = len(self.elements)
        self.inverse_indices = np.array(
            [int(np.flatnonzero(self.mult_table[i] == 0)[0]) for i in range(n)], dtype=int
        )
        self.determinants = np.array([element.det for element in self.elements], dtype=complex)

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, idx):
        return self.elements[idx]

    def __iter__(self):
        return iter(self.elements)

    def multiply(self, i, j):
        return int(self.mult_table[i, j])

    def inverse_of(self, i):
        return int(self.inverse_indices[i])

    def is_monomial(self):
        """Every element has exactly one nonzero entry per row"""
        for element in self.elements:
            counts = np.sum(np.abs(element.matrix) > self.eps, axis=1)
            if np.any(counts != 1):
                return False
        return True

    def subgroup_closure(self, indices):
        """Indices of the subgroup generated by the given element indices"""
        seen = {0}
        queue = deque([0])
        indices = list(indices)
        while queue:
            x = queue.popleft()
            for g in indices:
                y = int(self.mult_table[x, g])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def to_dict(self):
        return {
            'family': self.family_tag,
            'params': self.family_params,
            'order': self.order,
            'dimension': self.dimension,
        }


def _as_matrix(generator, d=None):
    matrix = np.asarray(generator, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ConfigError(f"generator of shape {matrix.shape} is not square")
    if d is not None and matrix.shape[0] != d:
        raise ConfigError(f"generator of size {matrix.shape[0]} in a {d}-dimensional group")
    return matrix


def _element_order(table, i, cap):
    k, j = 1, i
    while j != 0:
        j = int(table[j, i])
        k += 1
        if k > cap:
            raise NotFinite(f"element {i} has order above {cap}")
    return k


def generate_group(generators, cap=DEFAULT_CLOSURE_CAP, eps=DEFAULT_TOLERANCES.eps,
                   order_cap=DEFAULT_ORDER_CAP, family_tag='custom', family_params=None):
    """Closure of the generators under multiplication.

    Raises Singular for a non-invertible generator and NotFinite once the
    closure grows past cap elements.
    """
    if cap < 1:
        raise ConfigError("closure cap must be positive")
    if not generators:
        raise ConfigError("at least one generator is required")
    first = _as_matrix(generators[0])
    d = first.shape[0]
    mats = [_as_matrix(g, d) for g in generators]
    for g in mats:
        if abs(np.linalg.det(g)) < eps:
            raise Singular(f"generator {g.tolist()} is not invertible")

    index = _ElementIndex(eps)
    elements = [np.eye(d, dtype=complex)]
    index.add(elements[0], 0)
    queue = deque([0])
    while queue:
        x = elements[queue.popleft()]
        for g in mats:
            y = x @ g
            if index.find(y) is None:
                if len(elements) >= cap:
                    raise NotFinite(f"closure exceeded {cap} elements")
                index.add(y, len(elements))
                queue.append(len(elements))
                elements.append(y)

    n = len(elements)
    stack = np.array(elements)
    table = np.zeros((n, n), dtype=int)
    for i in range(n):
        products = np.einsum('jk,nkl->njl', stack[i], stack)
        for j in range(n):
            k = index.find(products[j])
            if k is None:
                raise NotFinite("products left the generated set; generators are not of finite order")
            table[i, j] = k

    group_elements = []
    for i in range(n):
        inverse = elements[int(np.flatnonzero(table[i] == 0)[0])]
        order = _element_order(table, i, order_cap)
        group_elements.append(GroupElement(matrix=elements[i], inverse=inverse, order=order))
    generator_indices = tuple(index.find(g) for g in mats)
    logger.debug("generated %s group of order %d in dimension %d", family_tag, n, d)
    return FiniteGroup(
        elements=group_elements,
        dimension=d,
        mult_table=table,
        family_tag=family_tag,
        family_params=dict(family_params or {}),
        generator_indices=generator_indices,
        eps=eps,
    )


@dataclass(frozen=True)
class FamilySpec:
    """Group descriptor as read from JSON, CLI flags or a request body"""
    family: str
    d: int = None
    orders: tuple = ()
    m: int = None
    generators: tuple = ()

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise ConfigError("group spec must be a JSON object")
        family = data.get('family')
        if family not in FAMILIES:
            raise UnsupportedFamily(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
        try:
            d = int(data['d']) if data.get('d') is not None else None
            m = int(data['m']) if data.get('m') is not None else None
            orders = tuple(int(n) for n in data.get('orders') or ())
        except (TypeError, ValueError) as e:
            raise ConfigError(f"malformed group spec: {e}") from e
        generators = ()
        if family == 'custom':
            raw = data.get('generators')
            if not raw:
                raise ConfigError("custom groups need 'generators'")
            try:
                generators = tuple(
                    np.array([[complex(x[0], x[1]) for x in row] for row in g], dtype=complex)
                    for g in raw
                )
            except (TypeError, ValueError, IndexError) as e:
                raise ConfigError(f"generators must be matrices of [re, im] pairs: {e}") from e
        return cls(family=family, d=d, orders=orders, m=m, generators=generators)

    def to_dict(self):
        out = {'family': self.family}
        if self.d is not None:
            out['d'] = self.d
        if self.orders:
            out['orders'] = list(self.orders)
        if self.m is not None:
            out['m'] = self.m
        if self.generators:
            out['generators'] = [
                [[[float(x.real), float(x.imag)] for x in row] for row in g] for g in self.generators
            ]
        return out


def _transpositions(d):
    gens = []
    for i in range(d - 1):
        p = np.eye(d, dtype=complex)
        p[[i, i + 1]] = p[[i + 1, i]]
        gens.append(p)
    return gens


def named_family(spec, cap=DEFAULT_CLOSURE_CAP, eps=DEFAULT_TOLERANCES.eps, order_cap=DEFAULT_ORDER_CAP):
    """symmetric(d), cyclic(n_1..n_d), wreath(m, d) = G(m,1,d), or custom generators"""
    if isinstance(spec, dict):
        spec = FamilySpec.from_dict(spec)
    family = spec.family
    if family == 'symmetric':
        if not spec.d or spec.d < 1:
            raise ConfigError("symmetric family needs d >= 1")
        gens = _transpositions(spec.d) or [np.eye(1, dtype=complex)]
        params = {'d': spec.d}
    elif family == 'cyclic':
        orders = spec.orders or ((spec.m,) if spec.m else ())
        if not orders or min(orders) < 1:
            raise ConfigError("cyclic family needs orders n_i >= 1")
        if spec.d is not None and spec.d != len(orders):
            raise ConfigError(f"cyclic family has {len(orders)} orders but d = {spec.d}")
        d = len(orders)
        gens = []
        for i, n in enumerate(orders):
            g = np.eye(d, dtype=complex)
            g[i, i] = root_of_unity(n)
            gens.append(g)
        params = {'orders': list(orders)}
    elif family == 'wreath':
        if not spec.d or spec.d < 1 or not spec.m or spec.m < 1:
            raise ConfigError("wreath family needs m >= 1 and d >= 1")
        diagonal = np.eye(spec.d, dtype=complex)
        diagonal[0, 0] = root_of_unity(spec.m)
        gens = _transpositions(spec.d) + [diagonal]
        params = {'m': spec.m, 'd': spec.d}
    elif family == 'custom':
        gens = list(spec.generators)
        params = {}
    else:
        raise UnsupportedFamily(f"unknown family {family!r}")
    return generate_group(gens, cap=cap, eps=eps, order_cap=order_cap,
                          family_tag=family, family_params=params)


def pseudoreflections(G, eps=DEFAULT_TOLERANCES.eps):
    """Indices of the non-identity elements with rank(I - sigma) = 1"""
    identity = np.eye(G.dimension)
    found = []
    for i, element in enumerate(G.elements):
        if i == 0:
            continue
        singular_values = np.linalg.svd(identity - element.matrix, compute_uv=False)
        if int(np.sum(singular_values > eps * G.dimension)) == 1:
            found.append(i)
    return found


def is_pseudoreflection_group(G, eps=DEFAULT_TOLERANCES.eps):
    return len(G.subgroup_closure(pseudoreflections(G, eps))) == G.order


def commutator_subgroup(G):
    table = G.mult_table
    inv = G.inverse_indices
    commutators = {
        int(table[table[table[g, h], inv[g]], inv[h]])
        for g in range(G.order) for h in range(G.order)
    }
    return G.subgroup_closure(commutators)


@dataclass(eq=False)
class Character:
    """One-dimensional representation stored on every group element"""
    values: np.ndarray
    exponents: tuple = None
    name: str = ''

    def __call__(self, idx):
        return complex(self.values[idx])

    def __len__(self):
        return len(self.values)

    def is_trivial(self, eps=DEFAULT_TOLERANCES.eps):
        return bool(np.all(np.abs(self.values - 1.0) < eps))

    def is_multiplicative(self, G, eps=DEFAULT_TOLERANCES.eps):
        products = np.outer(self.values, self.values)
        return bool(np.max(np.abs(self.values[G.mult_table] - products)) < eps)

    def allclose(self, other, eps=DEFAULT_TOLERANCES.eps):
        return bool(np.max(np.abs(self.values - other.values)) < eps)

    def to_dict(self):
        return {
            'name': self.name,
            'exponents': list(self.exponents) if self.exponents is not None else None,
            'values': [[round(v.real, 12) + 0.0, round(v.imag, 12) + 0.0] for v in self.values],
        }


def trivial_character(G):
    return Character(values=np.ones(G.order, dtype=complex), name='trivial')


def sign_character(G):
    """sigma -> det(sigma)^{-1}"""
    return Character(values=1.0 / G.determinants, name='sign')


def _coset_labels(G, subgroup):
    return np.array([min(int(G.mult_table[g, n]) for n in subgroup) for g in range(G.order)])


def one_dim_characters(G, eps=DEFAULT_TOLERANCES.eps):
    """All characters of G / [G, G], lifted to G; the trivial character comes first"""
    N = commutator_subgroup(G)
    labels = _coset_labels(G, N)
    table = G.mult_table

    gens = []
    span = set(N)
    for g in range(G.order):
        if g not in span:
            gens.append(g)
            span = set(G.subgroup_closure(list(N) + gens))
    gen_orders = []
    for g in gens:
        k, x = 1, g
        while labels[x] != labels[0]:
            x = int(table[x, g])
            k += 1
        gen_orders.append(k)

    characters = []
    for choice in itertools.product(*(range(k) for k in gen_orders)):
        gen_values = [root_of_unity(k, j) for k, j in zip(gen_orders, choice)]
        values = np.full(G.order, np.nan, dtype=complex)
        values[N] = 1.0
        queue = deque(N)
        consistent = True
        while queue and consistent:
            x = queue.popleft()
            for g, value in zip(gens, gen_values):
                y = int(table[x, g])
                candidate = values[x] * value
                if np.isnan(values[y].real):
                    values[y] = candidate
                    queue.append(y)
                elif abs(values[y] - candidate) > eps:
                    consistent = False
                    break
        if not consistent or np.any(np.isnan(values.real)):
            continue
        character = Character(values=values)
        if not character.is_multiplicative(G, eps):
            continue
        if any(character.allclose(other, eps) for other in characters):
            continue
        characters.append(character)

    expected = G.order // len(N)
    if len(characters) != expected:
        logger.warning("found %d characters, expected |G/[G,G]| = %d", len(characters), expected)
    logger.debug("group of order %d has %d one-dimensional characters", G.order, len(characters))
    return characters
