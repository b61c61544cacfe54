"""
Verification suites run by `verify-all`

Every suite returns a VerificationReport. Randomized suites draw from
numpy.random.default_rng(config.seed) so a fixed seed gives identical reports.
"""
import logging

import numpy as np

from quotient_hardy.config import Config, setting
from quotient_hardy.core.errors import QuotientHardyError
from quotient_hardy.core.group_core import commutator_subgroup, pseudoreflections
from quotient_hardy.core.hardy import (
    HardyModel,
    boundary_integral,
    gamma,
    inner_product,
    isotypic_decomposition,
    isotypic_project,
    jacobi_trudi_schur,
    onb_kernel_series,
    quotient_inner_product,
    quotient_kernel,
    schur_partition,
    subspace_kernel,
)
from quotient_hardy.core.invariants import (
    generating_polynomial,
    verify_jacobian_factorization,
)
from quotient_hardy.core.poly_engine import (
    MixedPolynomial,
    act,
    evaluate,
    exact_divide,
    random_polynomial,
)
from quotient_hardy.core.toeplitz import (
    check_brown_halmos,
    check_commuting_transfer,
    check_higher_isotypic_invariance,
    check_intertwining,
    check_module_invariance,
    check_product_transfer,
    check_reducing,
    lift_symbol,
)
from quotient_hardy.models import FAIL, PASS, VerificationReport
from quotient_hardy.services import GroupContext

logger = logging.getLogger(__name__)


def _gap(p, q):
    return (p - q).max_abs() / max(1.0, q.max_abs())


def group_structure(ctx):
    G, H = ctx.group, ctx.hyperplanes
    eps = ctx.config.tolerances.eps
    worst = 0.0
    for i in range(G.order):
        products = np.einsum('jk,nkl->njl', G[i].matrix, np.array([e.matrix for e in G.elements]))
        targets = np.array([G[int(k)].matrix for k in G.mult_table[i]])
        worst = max(worst, float(np.max(np.abs(products - targets))))
    reflections = len(pseudoreflections(G, eps))
    expected_characters = G.order // len(commutator_subgroup(G))
    degree_product = int(np.prod(ctx.basic_map.degrees))
    failures = []
    if reflections != sum(m - 1 for m in H.orders):
        failures.append('pseudoreflection count')
    if len(ctx.characters) != expected_characters:
        failures.append('character count')
    if degree_product != G.order:
        failures.append('degree product')
    details = {
        'order': G.order,
        'pseudoreflections': reflections,
        'characters': len(ctx.characters),
        'degree_product': degree_product,
        'failures': failures,
    }
    deviation = worst if not failures else max(worst, 1.0)
    return VerificationReport.from_deviation('group-structure', deviation, eps, G.order ** 2, details)


def jacobian_factorization(ctx):
    try:
        c = verify_jacobian_factorization(ctx.basic_map, ctx.hyperplanes, ctx.config.tolerances.eps)
    except QuotientHardyError as e:
        return VerificationReport('jacobian-factorization', FAIL, 1.0, 0, {'error': str(e)})
    return VerificationReport('jacobian-factorization', PASS, 0.0, 1, {'constant': [c.real, c.imag]})


def _random_polys(ctx, rng, count, settings):
    d = ctx.group.dimension
    degree = setting(settings, 'QH_RANDOM_DEGREE')
    return [random_polynomial(d, degree, rng, n_terms=6) for _ in range(count)]


def projection_algebra(ctx, rng, settings):
    G = ctx.group
    eps = ctx.config.tolerances.eps
    models = [HardyModel(kind, G.dimension, eps) for kind in ('polydisc', 'ball')]
    count = setting(settings, 'QH_PROJECTION_SAMPLES')
    polys = _random_polys(ctx, rng, count, settings)
    others = _random_polys(ctx, rng, count, settings)
    abelian = len(ctx.characters) == G.order
    worst = 0.0
    for f, g in zip(polys, others):
        projections = [isotypic_project(G, chi, f, eps) for chi in ctx.characters]
        for k, (chi, pf) in enumerate(zip(ctx.characters, projections)):
            worst = max(worst, _gap(isotypic_project(G, chi, pf, eps), pf))
            for other in ctx.characters[k + 1:]:
                worst = max(worst, isotypic_project(G, other, pf, eps).max_abs())
            pg = isotypic_project(G, chi, g, eps)
            for M in models:
                lhs, rhs = inner_product(M, pf, g), inner_product(M, f, pg)
                worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
        if abelian:
            total = MixedPolynomial.zero(G.dimension)
            for pf in projections:
                total = total + pf
            worst = max(worst, _gap(total, f))
    return VerificationReport.from_deviation('projection-algebra', worst, eps, len(polys),
                                             {'abelian': abelian, 'characters': len(ctx.characters)})


def stanley_divisibility(ctx, rng, settings):
    G, H = ctx.group, ctx.hyperplanes
    tol = ctx.config.tolerances
    worst, failures = 0.0, 0
    polys = _random_polys(ctx, rng, setting(settings, 'QH_STANLEY_SAMPLES'), settings)
    for chi in ctx.characters:
        ell = generating_polynomial(H, chi)
        for f in polys:
            try:
                quotient = exact_divide(isotypic_project(G, chi, f, tol.eps), ell, tol)
            except QuotientHardyError:
                failures += 1
                continue
            spread = max(_gap(act(element, quotient, tol.eps), quotient) for element in G.elements)
            worst = max(worst, spread)
    deviation = worst if not failures else max(worst, 1.0)
    return VerificationReport.from_deviation('stanley-divisibility', deviation, tol.eps,
                                             len(polys) * len(ctx.characters), {'division_failures': failures})


def isotypic_reconstruction(ctx, rng, settings):
    """f = sum_chi l_chi f_chi + rest, f_chi invariant and rest free of one-dimensional parts"""
    G, H = ctx.group, ctx.hyperplanes
    tol = ctx.config.tolerances
    abelian = len(ctx.characters) == G.order
    worst, failures = 0.0, 0
    polys = _random_polys(ctx, rng, setting(settings, 'QH_STANLEY_SAMPLES'), settings)
    for f in polys:
        try:
            parts = isotypic_decomposition(G, H, f, ctx.characters, tol)
        except QuotientHardyError:
            failures += 1
            continue
        rest = f
        for k, chi in enumerate(ctx.characters):
            part = parts[k]
            worst = max(worst, max(_gap(act(element, part, tol.eps), part) for element in G.elements))
            rest = rest - generating_polynomial(H, chi) * part
        if abelian:
            worst = max(worst, rest.max_abs() / max(1.0, f.max_abs()))
        for chi in ctx.characters:
            worst = max(worst, isotypic_project(G, chi, rest, tol.eps).max_abs() / max(1.0, f.max_abs()))
    deviation = worst if not failures else max(worst, 1.0)
    return VerificationReport.from_deviation('isotypic-decomposition', deviation, tol.eps, len(polys),
                                             {'abelian': abelian, 'division_failures': failures})


def _random_quotient_polys(ctx, rng, count):
    d = ctx.basic_map.dimension
    degree = max(1, ctx.config.degree // max(ctx.basic_map.degrees))
    return [random_polynomial(d, degree, rng, n_terms=4) for _ in range(count)]


def gamma_isometry(ctx, rng, spaces):
    worst, tested = 0.0, 0
    for Q in spaces:
        fs = _random_quotient_polys(ctx, rng, 4)
        gs = _random_quotient_polys(ctx, rng, 4)
        for f, g in zip(fs, gs):
            lhs = inner_product(Q.model, gamma(Q, f), gamma(Q, g))
            rhs = quotient_inner_product(Q, f, g)
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
            tested += 1
    return VerificationReport.from_deviation('gamma-isometry', worst, ctx.config.tolerances.eps, tested)


def onb_gram(ctx, spaces):
    worst, tested = 0.0, 0
    for Q in spaces:
        basis = Q.basis(ctx.config.degree)
        gram = basis.gram(Q.model)
        worst = max(worst, float(np.max(np.abs(gram - np.eye(len(basis))), initial=0.0)))
        tested += len(basis)
    return VerificationReport.from_deviation('onb-gram', worst, ctx.config.tolerances.eps, tested)


def _random_point(rng, d, kind, radius=0.5):
    z = rng.normal(size=d) + 1j * rng.normal(size=d)
    if kind == 'polydisc':
        return z / np.max(np.abs(z)) * radius * rng.uniform(0.3, 1.0)
    return z / np.linalg.norm(z) * radius * rng.uniform(0.3, 1.0)


def kernel_agreement(ctx, rng, spaces, settings):
    degree = setting(settings, 'QH_KERNEL_DEGREE')
    tol = setting(settings, 'QH_KERNEL_TOL')
    points = setting(settings, 'QH_KERNEL_POINTS')
    eps = ctx.config.tolerances.eps
    worst, fiber, elements, tested = 0.0, 0.0, 0.0, 0
    G = ctx.group
    for Q in spaces:
        for _ in range(points):
            z = _random_point(rng, G.dimension, Q.model.kind)
            w = _random_point(rng, G.dimension, Q.model.kind)
            series = onb_kernel_series(Q, z, w, degree, side='subspace')
            worst = max(worst, abs(subspace_kernel(Q, z, w) - series))
            if abs(evaluate(Q.generating, z)) > 1e-3 and abs(evaluate(Q.generating, w)) > 1e-3:
                closed = quotient_kernel(Q, z, w)
                series = onb_kernel_series(Q, z, w, degree, side='fiber')
                worst = max(worst, abs(closed - series) / max(1.0, abs(closed)))
                direct = onb_kernel_series(Q, z, w, ctx.config.degree, side='quotient')
                truncated = onb_kernel_series(Q, z, w, ctx.config.degree, side='fiber')
                elements = max(elements, abs(direct - truncated) / max(1.0, abs(truncated)))
                for element in G.elements:
                    moved = quotient_kernel(Q, element.matrix @ z, w)
                    fiber = max(fiber, abs(moved - closed) / max(1.0, abs(closed)))
            tested += 1
    verdict = PASS if worst < tol and fiber < eps and elements < tol else FAIL
    return VerificationReport('kernel-agreement', verdict, max(worst, fiber, elements), tested,
                              {'series_deviation': worst, 'fiber_deviation': fiber,
                               'element_deviation': elements, 'series_degree': degree})


def schur_oracle(ctx, Q, degree):
    worst, tested = 0.0, 0
    d = ctx.group.dimension
    for entry in Q.basis(degree):
        lam = schur_partition(entry.representative)
        worst = max(worst, _gap(Q.compose(entry.element), jacobi_trudi_schur(lam, d)))
        tested += 1
    return VerificationReport.from_deviation('schur-oracle', worst, ctx.config.tolerances.eps, tested)


def boundary_measure(ctx, spaces):
    worst = 0.0
    values = {}
    for Q in spaces:
        ell = Q.generating
        pullback = boundary_integral(Q.model, ell * ell.conjugate()) / Q.group.order
        one = MixedPolynomial.one(Q.basic_map.dimension)
        worst = max(worst, abs(pullback - quotient_inner_product(Q, one, one)))
        worst = max(worst, abs(pullback - inner_product(Q.model, gamma(Q, one), gamma(Q, one))))
        values[Q.character.name] = pullback.real
    return VerificationReport.from_deviation('boundary-measure', worst, 1e-12, len(spaces),
                                             {'norm_of_one': values})


def designed_symbols(d):
    w1 = MixedPolynomial.variable(d, 0)
    wd = MixedPolynomial.variable(d, d - 1)
    return {
        'one': MixedPolynomial.one(d),
        'w1': w1,
        'conj_w1': w1.conjugate(),
        'w1_plus_conj': w1 + w1.conjugate(),
        'w1_conj_wd': w1 * wd.conjugate(),
    }


def transfer_triples(d):
    w1 = MixedPolynomial.variable(d, 0)
    wd = MixedPolynomial.variable(d, d - 1)
    c1, cd = w1.conjugate(), wd.conjugate()
    products = [(w1, wd), (c1, w1), (c1, cd), (w1, c1), (c1 + w1, wd), (wd, w1), (cd, c1 + w1)]
    commuting = [(w1, wd), (c1, cd), (w1, c1)]
    return products, commuting


def _expected_product(u, v):
    coanalytic = all(not any(a) for (a, _) in u.terms)
    return coanalytic or v.is_holomorphic


def _expected_commute(u, v):
    def coanalytic(p):
        return all(not any(a) for (a, _) in p.terms)
    return (u.is_holomorphic and v.is_holomorphic) or (coanalytic(u) and coanalytic(v))


def transfer_structure(ctx, Q):
    d = ctx.basic_map.dimension
    cutoff = ctx.config.cutoff
    products, commuting = transfer_triples(d)
    mismatches, tested, outcomes = 0, 0, []
    for u, v in products:
        report = check_product_transfer(Q, ctx.characters, u, v, u * v, cutoff)
        ok = report.details['consistent'] and report.passed == _expected_product(u, v)
        mismatches += not ok
        tested += report.exact_region_size
        outcomes.append({'kind': 'product', 'verdict': report.verdict, 'consistent': report.details['consistent']})
    for u, v in commuting:
        report = check_commuting_transfer(Q, ctx.characters, u, v, cutoff)
        ok = report.details['consistent'] and report.passed == _expected_commute(u, v)
        mismatches += not ok
        tested += report.exact_region_size
        outcomes.append({'kind': 'commute', 'verdict': report.verdict, 'consistent': report.details['consistent']})
    return VerificationReport.from_deviation('transfer-structure', float(mismatches), 0.5, tested,
                                             {'outcomes': outcomes})


def _worst(name, reports):
    verdict = PASS
    if any(r.verdict == FAIL for r in reports):
        verdict = FAIL
    elif any(r.verdict != PASS for r in reports):
        verdict = reports[0].verdict if len({r.verdict for r in reports}) == 1 else FAIL
    deviation = max((r.max_deviation for r in reports), default=0.0)
    region = sum(r.exact_region_size for r in reports)
    details = {'runs': [dict(r.details, verdict=r.verdict, max_deviation=r.max_deviation) for r in reports]}
    return VerificationReport(name, verdict, deviation, region, details)


def toeplitz_identities(ctx, spaces):
    d = ctx.basic_map.dimension
    symbols = designed_symbols(d)
    degree = ctx.config.cutoff
    reducing, intertwining, module, higher = [], [], [], []
    for Q in spaces:
        for u in symbols.values():
            pair = lift_symbol(u, ctx.basic_map, Q.eps)
            reducing.append(check_reducing(Q, pair, degree))
            module.append(check_module_invariance(Q, pair, degree))
            intertwining.append(check_intertwining(Q, pair, degree))
    for u in symbols.values():
        pair = lift_symbol(u, ctx.basic_map, ctx.config.tolerances.eps)
        higher.append(check_higher_isotypic_invariance(spaces[0], ctx.characters, pair, degree))
    return [
        _worst('reducing', reducing),
        _worst('intertwining', intertwining),
        _worst('module-invariance', module),
        _worst('higher-isotypic', higher),
    ]


def brown_halmos(ctx, spaces, settings):
    symbols = designed_symbols(ctx.basic_map.dimension)
    cutoff = max(ctx.config.cutoff, setting(settings, 'QH_BROWN_HALMOS_CUTOFF'))
    reports = [check_brown_halmos(Q, u, cutoff) for Q in spaces for u in symbols.values()]
    return _worst('brown-halmos', reports)


def verify_all(config, settings=Config):
    """Run every suite for one group; returns the list of reports"""
    ctx = GroupContext(config, settings)
    rng = np.random.default_rng(config.seed)
    spaces = [ctx.space(chi) for chi in ctx.selected_characters()]
    reports = [
        group_structure(ctx),
        jacobian_factorization(ctx),
        projection_algebra(ctx, rng, settings),
        stanley_divisibility(ctx, rng, settings),
        isotypic_reconstruction(ctx, rng, settings),
        gamma_isometry(ctx, rng, spaces),
        onb_gram(ctx, spaces),
        kernel_agreement(ctx, rng, spaces, settings),
        boundary_measure(ctx, spaces),
    ]
    if ctx.group.family_tag == 'symmetric' and config.model == 'polydisc':
        sign_spaces = [Q for Q in spaces if Q.character.name == 'sign']
        if sign_spaces:
            reports.append(schur_oracle(ctx, sign_spaces[0], setting(settings, 'QH_SCHUR_DEGREE')))
    reports.extend(toeplitz_identities(ctx, spaces))
    reports.append(transfer_structure(ctx, spaces[0]))
    if config.model == 'polydisc':
        reports.append(brown_halmos(ctx, spaces, settings))
    for report in reports:
        logger.info("%-22s %s (max deviation %.3e)", report.name, report.verdict, report.max_deviation)
    return reports
