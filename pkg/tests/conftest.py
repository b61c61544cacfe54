import json
import os

import numpy as np
import pytest

from quotient_hardy import create_app
from quotient_hardy.config import TestConfig
from quotient_hardy.core.group_core import FamilySpec, named_family
from quotient_hardy.core.hardy import QuotientSpace
from quotient_hardy.core.invariants import basic_map, hyperplanes
from quotient_hardy.models import RunConfig

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), 'golden')

GROUP_SPECS = {
    'symmetric2': {'family': 'symmetric', 'd': 2},
    'symmetric3': {'family': 'symmetric', 'd': 3},
    'cyclic3': {'family': 'cyclic', 'orders': [3]},
    'cyclic2_2': {'family': 'cyclic', 'orders': [2, 2]},
    'wreath2_2': {'family': 'wreath', 'm': 2, 'd': 2},
}


@pytest.fixture(scope='session')
def groups():
    return {name: named_family(spec) for name, spec in GROUP_SPECS.items()}


@pytest.fixture(scope='session')
def s2(groups):
    return groups['symmetric2']


@pytest.fixture(scope='session')
def s3(groups):
    return groups['symmetric3']


@pytest.fixture(scope='session')
def wreath(groups):
    return groups['wreath2_2']


@pytest.fixture
def s2_sign():
    G = named_family(GROUP_SPECS['symmetric2'])
    return QuotientSpace.build(G, character='sign', model='polydisc',
                               basic_map=basic_map(G), H=hyperplanes(G))


@pytest.fixture
def s2_trivial():
    G = named_family(GROUP_SPECS['symmetric2'])
    return QuotientSpace.build(G, character='trivial', model='polydisc')


def run_config(name, **kwargs):
    return RunConfig(group=FamilySpec.from_dict(GROUP_SPECS[name]), **kwargs)


@pytest.fixture
def app():
    return create_app(TestConfig)


@pytest.fixture
def client(app):
    return app.test_client()


@pytest.fixture
def rng():
    return np.random.default_rng(7)


def load_golden(name):
    with open(os.path.join(GOLDEN_DIR, name), encoding='utf-8') as handle:
        return json.load(handle)


def assert_matches_golden(actual, expected, path='$', tol=1e-9):
    """Every key and list entry in expected must be present in actual; numbers compared with tol"""
    if isinstance(expected, dict):
        assert isinstance(actual, dict), f"{path}: expected an object"
        for key, value in expected.items():
            assert key in actual, f"{path}.{key} missing"
            assert_matches_golden(actual[key], value, f"{path}.{key}", tol)
    elif isinstance(expected, list):
        assert isinstance(actual, list), f"{path}: expected a list"
        assert len(actual) == len(expected), f"{path}: length {len(actual)} != {len(expected)}"
        for k, (a, e) in enumerate(zip(actual, expected)):
            assert_matches_golden(a, e, f"{path}[{k}]", tol)
    elif isinstance(expected, float):
        assert abs(actual - expected) < tol, f"{path}: {actual} != {expected}"
    else:
        assert actual == expected, f"{path}: {actual!r} != {expected!r}"
