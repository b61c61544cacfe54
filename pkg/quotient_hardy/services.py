"""
Glue between RunConfig and the core: builds groups and quotient spaces and
shapes results into JSON-ready dicts for the CLI and the HTTP routes
"""
import logging
from functools import cached_property

import numpy as np

from quotient_hardy.config import Config, setting
from quotient_hardy.core.errors import ConfigError, InvalidHsop
from quotient_hardy.core.group_core import named_family, pseudoreflections
from quotient_hardy.core.hardy import (
    QuotientSpace,
    divided_subspace_kernel,
    quotient_kernel,
    select_character,
    subspace_kernel,
)
from quotient_hardy.core.invariants import (
    annotated_characters,
    basic_map,
    generating_polynomial,
    hyperplanes,
    verify_jacobian_factorization,
)
from quotient_hardy.core.poly_engine import MixedPolynomial, complex_to_pair
from quotient_hardy.core.toeplitz import (
    check_brown_halmos,
    check_commuting_transfer,
    check_module_invariance,
    check_product_transfer,
    check_reducing,
    finite_section_singular_values,
    lift_symbol,
    toeplitz_matrix,
)

logger = logging.getLogger(__name__)

TOEPLITZ_CHECKS = (
    'matrix',
    'product-transfer',
    'commute-transfer',
    'brown-halmos',
    'reducing',
    'module-invariance',
)


class GroupContext:
    """Group, hyperplanes and annotated characters built once per run; the basic map on first use"""

    def __init__(self, config, settings=Config):
        eps = config.tolerances.eps
        self.config = config
        self.group = named_family(
            config.group,
            cap=setting(settings, 'QH_CLOSURE_CAP'),
            eps=eps,
            order_cap=setting(settings, 'QH_ORDER_CAP'),
        )
        self.hyperplanes = hyperplanes(self.group, eps)
        self.characters = annotated_characters(self.group, self.hyperplanes, eps)

    @cached_property
    def basic_map(self):
        user_map = None
        if self.config.basic_map:
            user_map = [MixedPolynomial.from_json(data) for data in self.config.basic_map]
        return basic_map(self.group, user_map=user_map, eps=self.config.tolerances.eps)

    def selected_characters(self):
        if self.config.character == 'all':
            return list(self.characters)
        return [select_character(self.group, self.hyperplanes, self.config.character, self.config.tolerances.eps)]

    def space(self, character=None, model=None):
        if character is None:
            character = self.selected_characters()[0]
        return QuotientSpace.build(
            self.group,
            character=character,
            model=model or self.config.model,
            basic_map=self.basic_map,
            H=self.hyperplanes,
            tolerances=self.config.tolerances,
        )


def describe(ctx):
    G, H = ctx.group, ctx.hyperplanes
    payload = {
        'group': G.to_dict(),
        'pseudoreflections': len(pseudoreflections(G, ctx.config.tolerances.eps)),
        'hyperplanes': H.to_dict(),
        'characters': [
            {'index': k, 'name': chi.name, 'exponents': list(chi.exponents)}
            for k, chi in enumerate(ctx.characters)
        ],
        'basic_map': None,
        'jacobian_constant': None,
    }
    try:
        B = ctx.basic_map
    except InvalidHsop as e:
        logger.warning("describing %s without a basic map: %s", G.family_tag, e)
        return payload
    payload['basic_map'] = B.to_dict()
    payload['jacobian_constant'] = complex_to_pair(verify_jacobian_factorization(B, H, ctx.config.tolerances.eps))
    return payload


def characters_payload(ctx):
    return {'characters': [dict(chi.to_dict(), index=k) for k, chi in enumerate(ctx.characters)]}


def lrho_payload(ctx):
    return {
        'generating_polynomials': [
            {'character': chi.name, 'exponents': list(chi.exponents),
             'polynomial': generating_polynomial(ctx.hyperplanes, chi).to_json()}
            for chi in ctx.selected_characters()
        ]
    }


def jacobian_payload(ctx):
    c = verify_jacobian_factorization(ctx.basic_map, ctx.hyperplanes, ctx.config.tolerances.eps)
    return {'constant': complex_to_pair(c), 'orders': list(ctx.hyperplanes.orders)}


def onb_payload(ctx):
    return {
        'model': ctx.config.model,
        'bases': [ctx.space(chi).basis(ctx.config.degree).to_dict() for chi in ctx.selected_characters()],
    }


def kernel_payload(ctx, z, w):
    Q = ctx.space()
    payload = {
        'character': Q.character.name,
        'z': [complex_to_pair(x) for x in z],
        'w': [complex_to_pair(x) for x in w],
        'subspace_kernel': complex_to_pair(subspace_kernel(Q, z, w)),
    }
    if abs(Q.generating(np.asarray(z))) > Q.eps and abs(Q.generating(np.asarray(w))) > Q.eps:
        payload['divided_subspace_kernel'] = complex_to_pair(divided_subspace_kernel(Q, z, w))
        payload['quotient_kernel'] = complex_to_pair(quotient_kernel(Q, z, w))
    return payload


def _symbol(symbols, name, d, required=True):
    value = symbols.get(name)
    if value is None:
        if required:
            raise ConfigError(f"symbol {name!r} is required for this check")
        return None
    if not isinstance(value, MixedPolynomial):
        value = MixedPolynomial.from_json(value)
    if value.dimension != d:
        raise ConfigError(f"symbol {name!r} has {value.dimension} variables, expected {d}")
    return value


def toeplitz_payload(ctx, check, symbols):
    """Run one Toeplitz command; symbols maps 'u', 'v', 'q' to polynomials or polynomial JSON"""
    if check not in TOEPLITZ_CHECKS:
        raise ConfigError(f"unknown toeplitz check {check!r}")
    Q = ctx.space()
    d = ctx.basic_map.dimension
    cutoff = ctx.config.cutoff
    u = _symbol(symbols, 'u', d)
    if check == 'matrix':
        truncation = toeplitz_matrix(Q, u, cutoff)
        k = min(truncation.size, 5)
        return dict(truncation.to_dict(), singular_values=finite_section_singular_values(truncation, k))
    if check == 'product-transfer':
        report = check_product_transfer(Q, ctx.characters, u, _symbol(symbols, 'v', d), _symbol(symbols, 'q', d), cutoff)
    elif check == 'commute-transfer':
        report = check_commuting_transfer(Q, ctx.characters, u, _symbol(symbols, 'v', d), cutoff)
    elif check == 'brown-halmos':
        report = check_brown_halmos(Q, u, cutoff)
    elif check == 'reducing':
        report = check_reducing(Q, lift_symbol(u, ctx.basic_map, Q.eps), cutoff)
    else:
        report = check_module_invariance(Q, lift_symbol(u, ctx.basic_map, Q.eps), cutoff)
    return report
