"""
Input validation utilities for request bodies and CLI arguments
"""
import math

from quotient_hardy.core.group_core import FAMILIES
from quotient_hardy.core.hardy import MODEL_KINDS

CHARACTER_WORDS = ('sign', 'trivial', 'all')


def validate_integer(value, field_name, min_value=None, max_value=None, required=True):
    """Validate integer field"""
    if required and value is None:
        return False, f"{field_name} is required"

    if value is not None:
        if isinstance(value, bool):
            return False, f"{field_name} must be a valid integer"
        try:
            int_value = int(value)
            if isinstance(value, float) and value != int_value:
                return False, f"{field_name} must be a valid integer"
            if min_value is not None and int_value < min_value:
                return False, f"{field_name} must be at least {min_value}"
            if max_value is not None and int_value > max_value:
                return False, f"{field_name} must be at most {max_value}"
        except (ValueError, TypeError):
            return False, f"{field_name} must be a valid integer"

    return True, None


def validate_enum(value, field_name, allowed_values, required=True):
    """Validate enum/choice field"""
    if required and not value:
        return False, f"{field_name} is required"

    if value and value not in allowed_values:
        return False, f"{field_name} must be one of: {', '.join(allowed_values)}"

    return True, None


def validate_tolerance(value, field_name='Tolerance'):
    if value is None:
        return True, None
    try:
        tol = float(value)
    except (TypeError, ValueError):
        return False, f"{field_name} must be a number"
    if not math.isfinite(tol) or tol <= 0:
        return False, f"{field_name} must be positive"
    return True, None


def validate_character(value):
    """Index into the annotated characters, or one of sign / trivial / all"""
    if value is None:
        return False, "Character is required"
    if isinstance(value, str) and value in CHARACTER_WORDS:
        return True, None
    return validate_integer(value, 'Character index', min_value=0)


def validate_model(value):
    return validate_enum(value, 'Model', MODEL_KINDS)


def _validate_matrix(matrix, d):
    if not isinstance(matrix, list) or len(matrix) != d:
        return False, f"Generators must be {d}x{d} matrices"
    for row in matrix:
        if not isinstance(row, list) or len(row) != d:
            return False, f"Generators must be {d}x{d} matrices"
        for entry in row:
            if not isinstance(entry, list) or len(entry) != 2:
                return False, "Matrix entries must be [re, im] pairs"
            if not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in entry):
                return False, "Matrix entries must be numbers"
    return True, None


def validate_group_spec(spec):
    """Validate group spec JSON"""
    if not isinstance(spec, dict):
        return False, "Group spec must be an object"

    is_valid, error = validate_enum(spec.get('family'), 'Family', FAMILIES)
    if not is_valid:
        return is_valid, error

    family = spec['family']
    if family == 'symmetric':
        return validate_integer(spec.get('d'), 'd', min_value=1, max_value=6)
    if family == 'wreath':
        is_valid, error = validate_integer(spec.get('m'), 'm', min_value=1, max_value=12)
        if not is_valid:
            return is_valid, error
        return validate_integer(spec.get('d'), 'd', min_value=1, max_value=4)
    if family == 'cyclic':
        orders = spec.get('orders')
        if not isinstance(orders, list) or not orders:
            return False, "Orders must be a non-empty list"
        for n in orders:
            is_valid, error = validate_integer(n, 'Order', min_value=1, max_value=64)
            if not is_valid:
                return is_valid, error
        return True, None

    generators = spec.get('generators')
    if not isinstance(generators, list) or not generators:
        return False, "Custom groups need a non-empty generators list"
    first = generators[0]
    d = len(first) if isinstance(first, list) else 0
    if d < 1:
        return False, "Generators must be square matrices"
    for matrix in generators:
        is_valid, error = _validate_matrix(matrix, d)
        if not is_valid:
            return is_valid, error
    return True, None


def validate_polynomial(data, field_name='Polynomial', dimension=None):
    """Validate polynomial JSON {"d", "terms": [{"a", "b", "c"}]}"""
    if not isinstance(data, dict):
        return False, f"{field_name} must be an object"
    is_valid, error = validate_integer(data.get('d'), f"{field_name} dimension", min_value=1)
    if not is_valid:
        return is_valid, error
    d = int(data['d'])
    if dimension is not None and d != dimension:
        return False, f"{field_name} must have {dimension} variables"
    terms = data.get('terms')
    if not isinstance(terms, list):
        return False, f"{field_name} terms must be a list"
    for term in terms:
        if not isinstance(term, dict) or 'a' not in term or 'c' not in term:
            return False, f"{field_name} terms need 'a' and 'c'"
        for key in ('a', 'b'):
            exps = term.get(key)
            if exps is None and key == 'b':
                continue
            if not isinstance(exps, list) or len(exps) != d:
                return False, f"{field_name} exponents must have length {d}"
            if not all(isinstance(k, int) and not isinstance(k, bool) and k >= 0 for k in exps):
                return False, f"{field_name} exponents must be non-negative integers"
        c = term['c']
        if isinstance(c, list):
            if len(c) != 2 or not all(isinstance(x, (int, float)) for x in c):
                return False, f"{field_name} coefficients must be [re, im] pairs"
        elif not isinstance(c, (int, float)):
            return False, f"{field_name} coefficients must be [re, im] pairs"
    return True, None


def validate_point(value, dimension, field_name='Point'):
    """A point is a list of d numbers or [re, im] pairs"""
    if not isinstance(value, list) or len(value) != dimension:
        return False, f"{field_name} must have {dimension} coordinates"
    for x in value:
        if isinstance(x, list):
            if len(x) != 2 or not all(isinstance(y, (int, float)) for y in x):
                return False, f"{field_name} coordinates must be numbers or [re, im] pairs"
        elif not isinstance(x, (int, float)) or isinstance(x, bool):
            return False, f"{field_name} coordinates must be numbers or [re, im] pairs"
    return True, None


def parse_point(value):
    return [complex(x[0], x[1]) if isinstance(x, list) else complex(x) for x in value]
