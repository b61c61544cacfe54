"""
Mixed polynomials in z and conj(z)

A MixedPolynomial is a finite sum of terms c * z^a * conj(z)^b stored as a
dict keyed by (a, b) exponent tuples. b = 0 everywhere means holomorphic.
Values are treated as immutable: every operation returns a new polynomial.
"""
import itertools
import logging
import numbers
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidHsop, NotDivisible, NotHolomorphic
from .tolerances import DEFAULT_TOLERANCES

logger = logging.getLogger(__name__)

DROP_TOL = DEFAULT_TOLERANCES.drop


def grlex_key(exponent):
    """Graded lexicographic sort key for an exponent tuple"""
    return (sum(exponent), exponent)


def exponents_of_degree(d, n):
    """All exponent tuples of length d and total degree n, lex-descending"""
    if d == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in exponents_of_degree(d - 1, n - first):
            yield (first,) + rest


def exponents_up_to(d, max_degree):
    for n in range(max_degree + 1):
        yield from exponents_of_degree(d, n)


def complex_to_pair(value, digits=12):
    value = complex(value)
    # adding 0.0 turns -0.0 into 0.0 so serialized output is stable
    return [round(value.real, digits) + 0.0, round(value.imag, digits) + 0.0]


def pair_to_complex(pair):
    if isinstance(pair, numbers.Number):
        return complex(pair)
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise ValueError("complex scalars are serialized as [re, im] pairs")
    return complex(float(pair[0]), float(pair[1]))


def _is_scalar(value):
    return isinstance(value, (numbers.Number, np.number))


def _add_exponents(x, y):
    return tuple(i + j for i, j in zip(x, y))


class MixedPolynomial:
    """Polynomial in z_1..z_d and conj(z_1)..conj(z_d) with complex coefficients"""

    __slots__ = ('dimension', 'terms')

    def __init__(self, dimension, terms=None):
        if dimension < 1:
            raise DimensionMismatch("polynomials need at least one variable")
        cleaned = {}
        for (a, b), c in (terms or {}).items():
            a = tuple(int(x) for x in a)
            b = tuple(int(x) for x in b)
            if len(a) != dimension or len(b) != dimension:
                raise DimensionMismatch(
                    f"exponent tuples {a}, {b} do not match dimension {dimension}"
                )
            if min(a + b) < 0:
                raise ValueError("exponents must be non-negative")
            c = complex(c)
            if abs(c) >= DROP_TOL:
                cleaned[(a, b)] = cleaned.get((a, b), 0j) + c
        self.dimension = dimension
        self.terms = cleaned

    @classmethod
    def _from_terms(cls, dimension, terms):
        """Trusted constructor used by arithmetic: only drops small terms"""
        poly = cls.__new__(cls)
        poly.dimension = dimension
        poly.terms = {k: v for k, v in terms.items() if abs(v) >= DROP_TOL}
        return poly

    # constructors

    @classmethod
    def zero(cls, dimension):
        return cls(dimension)

    @classmethod
    def constant(cls, dimension, value):
        zeros = (0,) * dimension
        return cls._from_terms(dimension, {(zeros, zeros): complex(value)})

    @classmethod
    def one(cls, dimension):
        return cls.constant(dimension, 1.0)

    @classmethod
    def monomial(cls, dimension, a, b=None, coefficient=1.0):
        b = tuple(b) if b is not None else (0,) * dimension
        return cls(dimension, {(tuple(a), b): coefficient})

    @classmethod
    def variable(cls, dimension, index, conjugate=False):
        unit = tuple(1 if j == index else 0 for j in range(dimension))
        zeros = (0,) * dimension
        if conjugate:
            return cls._from_terms(dimension, {(zeros, unit): 1.0})
        return cls._from_terms(dimension, {(unit, zeros): 1.0})

    @classmethod
    def linear_form(cls, coefficients):
        """sum_j coefficients[j] * z_j"""
        d = len(coefficients)
        zeros = (0,) * d
        terms = {}
        for j, c in enumerate(coefficients):
            unit = tuple(1 if k == j else 0 for k in range(d))
            terms[(unit, zeros)] = complex(c)
        return cls._from_terms(d, terms)

    # inspection

    @property
    def is_zero(self):
        return not self.terms

    @property
    def is_holomorphic(self):
        return all(not any(b) for (_, b) in self.terms)

    def degree(self):
        """Total degree |a| + |b|; 0 for the zero polynomial"""
        return max((sum(a) + sum(b) for (a, b) in self.terms), default=0)

    def net_degree(self):
        """max |a| - |b|: the degree that survives the Szego projection"""
        return max((sum(a) - sum(b) for (a, b) in self.terms), default=0)

    def is_homogeneous(self, degree=None):
        degrees = {sum(a) + sum(b) for (a, b) in self.terms}
        if not degrees:
            return True
        if len(degrees) > 1:
            return False
        return degree is None or degrees == {degree}

    def coefficient(self, a, b=None):
        b = tuple(b) if b is not None else (0,) * self.dimension
        return self.terms.get((tuple(a), b), 0j)

    def holomorphic_terms(self):
        """{a: c} view of a holomorphic polynomial"""
        if not self.is_holomorphic:
            raise NotHolomorphic("polynomial has conj(z) terms")
        return {a: c for (a, _), c in self.terms.items()}

    def homogeneous_components(self):
        parts = {}
        for (a, b), c in self.terms.items():
            parts.setdefault(sum(a) + sum(b), {})[(a, b)] = c
        return {n: MixedPolynomial._from_terms(self.dimension, t) for n, t in sorted(parts.items())}

    def lex_greatest_term(self):
        """(key, coefficient) with the lexicographically greatest (a, b)"""
        key = max(self.terms)
        return key, self.terms[key]

    def max_abs(self):
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def l1_norm(self):
        return sum(abs(c) for c in self.terms.values())

    # arithmetic

    def _check(self, other):
        if other.dimension != self.dimension:
            raise DimensionMismatch(
                f"dimension {self.dimension} does not match {other.dimension}"
            )

    def __add__(self, other):
        if _is_scalar(other):
            other = MixedPolynomial.constant(self.dimension, other)
        if not isinstance(other, MixedPolynomial):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0j) + v
        return MixedPolynomial._from_terms(self.dimension, out)

    __radd__ = __add__

    def __neg__(self):
        return MixedPolynomial._from_terms(self.dimension, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        if _is_scalar(other):
            other = MixedPolynomial.constant(self.dimension, other)
        if not isinstance(other, MixedPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            c = complex(other)
            return MixedPolynomial._from_terms(self.dimension, {k: v * c for k, v in self.terms.items()})
        if not isinstance(other, MixedPolynomial):
            return NotImplemented
        self._check(other)
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (_add_exponents(a1, a2), _add_exponents(b1, b2))
                out[key] = out.get(key, 0j) + c1 * c2
        return MixedPolynomial._from_terms(self.dimension, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not _is_scalar(other):
            return NotImplemented
        return self * (1.0 / complex(other))

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = MixedPolynomial.one(self.dimension)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def conjugate(self):
        """conj(f): swaps holomorphic and antiholomorphic exponents"""
        return MixedPolynomial._from_terms(
            self.dimension, {(b, a): c.conjugate() for (a, b), c in self.terms.items()}
        )

    def distance(self, other):
        return (self - other).max_abs()

    def allclose(self, other, tol=DEFAULT_TOLERANCES.eps):
        return self.distance(other) < tol

    def __call__(self, z):
        return evaluate(self, z)

    # serialization

    def to_json(self, digits=12):
        ordered = sorted(
            self.terms.items(),
            key=lambda item: (sum(item[0][0]) + sum(item[0][1]), item[0][0], item[0][1]),
            reverse=True,
        )
        return {
            'd': self.dimension,
            'terms': [
                {'a': list(a), 'b': list(b), 'c': complex_to_pair(c, digits)}
                for (a, b), c in ordered
            ],
        }

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or 'd' not in data or 'terms' not in data:
            raise ValueError("polynomial JSON needs 'd' and 'terms'")
        d = int(data['d'])
        terms = {}
        for term in data['terms']:
            a = tuple(term['a'])
            b = tuple(term.get('b') or (0,) * d)
            key = (a, b)
            terms[key] = terms.get(key, 0j) + pair_to_complex(term['c'])
        return cls(d, terms)

    def __repr__(self):
        if self.is_zero:
            return f"MixedPolynomial(d={self.dimension}, 0)"
        parts = []
        for (a, b), c in sorted(self.terms.items(), reverse=True):
            factors = [f"z{j + 1}^{k}" for j, k in enumerate(a) if k]
            factors += [f"zb{j + 1}^{k}" for j, k in enumerate(b) if k]
            parts.append(f"({c:.6g})" + ("*" + "*".join(factors) if factors else ""))
        return f"MixedPolynomial(d={self.dimension}, " + " + ".join(parts) + ")"


@dataclass(frozen=True, eq=False)
class PolynomialMap:
    """theta = (theta_1, ..., theta_d) with homogeneous holomorphic components"""
    components: tuple
    degrees: tuple

    def __post_init__(self):
        if len(self.components) != len(self.degrees):
            raise InvalidHsop("one degree per component is required")
        for theta, deg in zip(self.components, self.degrees):
            if not theta.is_holomorphic:
                raise InvalidHsop("basic map components must be holomorphic")
            if theta.is_zero or deg < 1 or not theta.is_homogeneous(deg):
                raise InvalidHsop(f"component {theta!r} is not homogeneous of degree {deg}")

    @classmethod
    def from_components(cls, components):
        components = tuple(components)
        degrees = []
        for theta in components:
            if theta.is_zero or not theta.is_homogeneous():
                raise InvalidHsop(f"component {theta!r} is not homogeneous")
            degrees.append(theta.degree())
        return cls(components, tuple(degrees))

    @property
    def dimension(self):
        return len(self.components)

    @property
    def source_dimension(self):
        return self.components[0].dimension

    def __call__(self, z):
        return np.array([evaluate(theta, z) for theta in self.components], dtype=complex)

    def to_json(self):
        return [theta.to_json() for theta in self.components]


def evaluate(f, z):
    """f(z) with conj(z) substituted for the antiholomorphic variables"""
    z = np.asarray(z, dtype=complex).reshape(-1)
    if z.shape[0] != f.dimension:
        raise DimensionMismatch(f"point has {z.shape[0]} coordinates, polynomial has {f.dimension}")
    if f.is_zero:
        return 0j
    keys = list(f.terms)
    holo = np.array([a for a, _ in keys], dtype=int)
    anti = np.array([b for _, b in keys], dtype=int)
    coefficients = np.array([f.terms[k] for k in keys], dtype=complex)
    values = np.prod(z ** holo, axis=1) * np.prod(np.conj(z) ** anti, axis=1)
    return complex(coefficients @ values)


def substitute(f, holo_images, anti_images=None):
    """Replace z_j by holo_images[j] and conj(z_j) by anti_images[j], then expand"""
    if len(holo_images) != f.dimension:
        raise DimensionMismatch("need one image polynomial per variable")
    target = holo_images[0].dimension
    powers = {}

    def power(kind, j, k):
        key = (kind, j, k)
        if key not in powers:
            base = holo_images[j] if kind == 0 else anti_images[j]
            powers[key] = base if k == 1 else power(kind, j, k - 1) * base
        return powers[key]

    out = {}
    for (a, b), c in f.terms.items():
        if any(b) and anti_images is None:
            raise NotHolomorphic("conj(z) terms need antiholomorphic images")
        term = MixedPolynomial.constant(target, c)
        for j, k in enumerate(a):
            if k:
                term = term * power(0, j, k)
        for j, k in enumerate(b):
            if k:
                term = term * power(1, j, k)
        for key, v in term.terms.items():
            out[key] = out.get(key, 0j) + v
    return MixedPolynomial._from_terms(target, out)


def _monomial_pattern(matrix, eps):
    """[(column, value)] per row if matrix has one nonzero entry per row, else None"""
    pattern = []
    for row in matrix:
        nonzero = np.flatnonzero(np.abs(row) > eps)
        if len(nonzero) != 1:
            return None
        col = int(nonzero[0])
        pattern.append((col, complex(row[col])))
    return pattern


def act(sigma, f, eps=DEFAULT_TOLERANCES.eps):
    """sigma(f)(z) = f(sigma^{-1} z); conj(z) variables follow the conjugate matrix.

    sigma is a GroupElement (its cached inverse is used) or a plain matrix.
    """
    inverse = getattr(sigma, 'inverse', None)
    if inverse is None:
        inverse = np.linalg.inv(np.asarray(sigma, dtype=complex))
    d = f.dimension
    if inverse.shape != (d, d):
        raise DimensionMismatch(f"{inverse.shape[0]}x{inverse.shape[1]} matrix acting on {d} variables")

    pattern = _monomial_pattern(inverse, eps)
    if pattern is not None:
        out = {}
        for (a, b), c in f.terms.items():
            new_a = [0] * d
            new_b = [0] * d
            for j, (col, val) in enumerate(pattern):
                if a[j]:
                    new_a[col] += a[j]
                    c *= val ** a[j]
                if b[j]:
                    new_b[col] += b[j]
                    c *= val.conjugate() ** b[j]
            key = (tuple(new_a), tuple(new_b))
            out[key] = out.get(key, 0j) + c
        return MixedPolynomial._from_terms(d, out)

    holo = [MixedPolynomial.linear_form(inverse[j]) for j in range(d)]
    anti = [
        MixedPolynomial._from_terms(d, {(b, a): c for (a, b), c in form.terms.items()})
        for form in (MixedPolynomial.linear_form(np.conj(inverse[j])) for j in range(d))
    ]
    return substitute(f, holo, anti)


def compose(f, theta):
    """f o theta for holomorphic f"""
    if not f.is_holomorphic:
        raise NotHolomorphic("compose needs a holomorphic outer polynomial")
    if f.dimension != theta.dimension:
        raise DimensionMismatch(f"{f.dimension} quotient variables, map has {theta.dimension} components")
    return substitute(f, list(theta.components))


def compose_mixed(f, theta):
    """f(theta, conj(theta)) for a polynomial in w and conj(w)"""
    if f.dimension != theta.dimension:
        raise DimensionMismatch(f"{f.dimension} quotient variables, map has {theta.dimension} components")
    components = list(theta.components)
    return substitute(f, components, [c.conjugate() for c in components])


def derivative(f, index):
    """Holomorphic partial derivative d/dz_index (conj(z) held fixed)"""
    out = {}
    for (a, b), c in f.terms.items():
        k = a[index]
        if k:
            lowered = tuple(x - 1 if j == index else x for j, x in enumerate(a))
            out[(lowered, b)] = out.get((lowered, b), 0j) + c * k
    return MixedPolynomial._from_terms(f.dimension, out)


def _permutation_sign(perm):
    sign = 1
    for i, j in itertools.combinations(range(len(perm)), 2):
        if perm[i] > perm[j]:
            sign = -sign
    return sign


def polynomial_determinant(rows):
    """Leibniz expansion of a square matrix of polynomials"""
    n = len(rows)
    dimension = rows[0][0].dimension
    total = MixedPolynomial.zero(dimension)
    for perm in itertools.permutations(range(n)):
        term = MixedPolynomial.constant(dimension, _permutation_sign(perm))
        for i, j in enumerate(perm):
            term = term * rows[i][j]
            if term.is_zero:
                break
        total = total + term
    return total


def jacobian_det(theta):
    """det(d theta_i / d z_j)"""
    if theta.dimension != theta.source_dimension:
        raise DimensionMismatch("Jacobian determinant needs d components in d variables")
    rows = [[derivative(comp, j) for j in range(theta.source_dimension)] for comp in theta.components]
    return polynomial_determinant(rows)


def exact_divide(f, g, tol=DEFAULT_TOLERANCES):
    """q with f = g*q, by multivariate division on the grlex-leading term of g.

    Raises NotDivisible when the remainder exceeds tol.div * (1 + max|coeff f|).
    """
    if not (f.is_holomorphic and g.is_holomorphic):
        raise NotHolomorphic("exact_divide works on holomorphic polynomials")
    if f.dimension != g.dimension:
        raise DimensionMismatch(f"dimension {f.dimension} does not match {g.dimension}")
    if g.is_zero:
        raise NotDivisible("division by the zero polynomial")
    d = f.dimension
    if f.is_zero:
        return MixedPolynomial.zero(d)

    divisor = g.holomorphic_terms()
    lead = max(divisor, key=grlex_key)
    lead_c = divisor[lead]
    tail = [(a, c) for a, c in divisor.items() if a != lead]

    work = f.holomorphic_terms()
    scale = max(abs(c) for c in work.values())
    floor = tol.drop * (1.0 + scale)
    quotient = {}
    remainder = {}
    while work:
        a = max(work, key=grlex_key)
        c = work.pop(a)
        if abs(c) < floor:
            continue
        if all(x >= y for x, y in zip(a, lead)):
            shift = tuple(x - y for x, y in zip(a, lead))
            factor = c / lead_c
            quotient[shift] = quotient.get(shift, 0j) + factor
            for b, gc in tail:
                key = _add_exponents(shift, b)
                work[key] = work.get(key, 0j) - factor * gc
        else:
            remainder[a] = c

    residual = max((abs(c) for c in remainder.values()), default=0.0)
    if residual > tol.div * (1.0 + scale):
        raise NotDivisible(
            f"remainder of size {residual:.3e} dividing by {g!r}", remainder_norm=residual
        )
    zeros = (0,) * d
    return MixedPolynomial._from_terms(d, {(a, zeros): c for a, c in quotient.items()})


def random_polynomial(dimension, max_degree, rng, n_terms=8, anti_degree=0):
    """Random complex-Gaussian polynomial; anti_degree > 0 adds conj(z) factors"""
    terms = {}
    zeros = (0,) * dimension
    for _ in range(n_terms):
        a = _random_exponent(dimension, int(rng.integers(0, max_degree + 1)), rng)
        b = _random_exponent(dimension, int(rng.integers(0, anti_degree + 1)), rng) if anti_degree else zeros
        c = complex(rng.normal(), rng.normal())
        terms[(a, b)] = terms.get((a, b), 0j) + c
    return MixedPolynomial(dimension, terms)


def _random_exponent(dimension, degree, rng):
    cuts = np.sort(rng.integers(0, degree + 1, size=dimension - 1))
    bounds = np.concatenate(([0], cuts, [degree]))
    return tuple(int(x) for x in np.diff(bounds))
