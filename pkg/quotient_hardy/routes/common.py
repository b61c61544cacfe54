"""
Request parsing shared by the blueprints
"""
from flask import current_app

from quotient_hardy.config import tolerances_from
from quotient_hardy.core.errors import ConfigError
from quotient_hardy.core.group_core import FamilySpec
from quotient_hardy.models import RunConfig
from quotient_hardy.utils.validators import (
    validate_character,
    validate_group_spec,
    validate_integer,
    validate_model,
    validate_polynomial,
    validate_tolerance,
)


def run_config_from_request(data, default_character='sign'):
    """Returns (RunConfig, None) or (None, error message)"""
    if not data:
        return None, 'No data provided'

    group = data.get('group')
    is_valid, error = validate_group_spec(group)
    if not is_valid:
        return None, error

    character = data.get('character', default_character)
    is_valid, error = validate_character(character)
    if not is_valid:
        return None, error

    model = data.get('model', 'polydisc')
    is_valid, error = validate_model(model)
    if not is_valid:
        return None, error

    max_cutoff = current_app.config.get('QH_MAX_CUTOFF', 24)
    for field in ('cutoff', 'degree'):
        is_valid, error = validate_integer(data.get(field), field.capitalize(), min_value=1,
                                           max_value=max_cutoff, required=False)
        if not is_valid:
            return None, error

    is_valid, error = validate_tolerance(data.get('tol'))
    if not is_valid:
        return None, error

    is_valid, error = validate_integer(data.get('seed'), 'Seed', min_value=0, required=False)
    if not is_valid:
        return None, error

    basic_map = data.get('map')
    if basic_map is not None:
        if not isinstance(basic_map, list) or not basic_map:
            return None, 'Map must be a non-empty list of polynomials'
        for k, component in enumerate(basic_map):
            is_valid, error = validate_polynomial(component, f'Map component {k + 1}')
            if not is_valid:
                return None, error

    try:
        tol = float(data['tol']) if data.get('tol') is not None else None
        config = RunConfig(
            group=FamilySpec.from_dict(group),
            character=str(character),
            model=model,
            cutoff=int(data.get('cutoff', 6)),
            degree=int(data.get('degree', 6)),
            tolerances=tolerances_from(current_app.config, tol),
            seed=int(data.get('seed', current_app.config.get('QH_DEFAULT_SEED', 0))),
            basic_map=tuple(basic_map) if basic_map else None,
        )
    except (ConfigError, ValueError) as e:
        return None, str(e)
    return config, None
