"""
Command-line front end

    python -m quotient_hardy describe --family symmetric --d 3
    python -m quotient_hardy toeplitz brown-halmos --family symmetric --d 2 --u '{"d": 2, ...}'
    python -m quotient_hardy verify-all --family wreath --m 2 --d 2 --model ball

Exit codes: 0 success, 1 a check failed, 2 bad configuration.
"""
import argparse
import json
import logging
import os
import sys

from quotient_hardy.config import Config, tolerances_from
from quotient_hardy.core.errors import ConfigError, QuotientHardyError
from quotient_hardy.core.group_core import FAMILIES, FamilySpec
from quotient_hardy.models import OUTPUT_FORMATS, VerificationReport, RunConfig
from quotient_hardy.services import (
    TOEPLITZ_CHECKS,
    GroupContext,
    characters_payload,
    describe,
    jacobian_payload,
    kernel_payload,
    lrho_payload,
    onb_payload,
    toeplitz_payload,
)
from quotient_hardy.suites import verify_all
from quotient_hardy.utils.serialization import dump_json, load_json_file, reports_to_csv
from quotient_hardy.utils.validators import validate_group_spec, validate_polynomial

logger = logging.getLogger('quotient_hardy')

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2


def _common_arguments():
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group('group')
    group.add_argument('--group', metavar='PATH', help='group spec JSON file')
    group.add_argument('--family', choices=FAMILIES)
    group.add_argument('--d', type=int)
    group.add_argument('--m', type=int)
    group.add_argument('--orders', type=lambda s: [int(x) for x in s.split(',')], help='comma-separated cyclic orders')
    run = common.add_argument_group('run')
    run.add_argument('--character', default=None, help="index, 'sign', 'trivial' or 'all'")
    run.add_argument('--model', choices=('polydisc', 'ball'), default='polydisc')
    run.add_argument('--cutoff', type=int, default=6)
    run.add_argument('--degree', type=int, default=6)
    run.add_argument('--tol', type=float, default=None, help='overrides QH_TOL')
    run.add_argument('--seed', type=int, default=Config.QH_DEFAULT_SEED)
    run.add_argument('--map', metavar='JSON', help='basic map as a JSON list of polynomials, or a path to one')
    run.add_argument('--format', choices=OUTPUT_FORMATS, default='json')
    run.add_argument('--out', metavar='PATH')
    run.add_argument('--verbose', action='store_true')
    return common


def build_parser():
    common = _common_arguments()
    parser = argparse.ArgumentParser(prog='quotient_hardy', description=__doc__.splitlines()[1])
    commands = parser.add_subparsers(dest='command', required=True)

    commands.add_parser('describe', parents=[common], help='group order, hyperplanes, characters, hsop')
    commands.add_parser('characters', parents=[common], help='one-dimensional characters')

    invariants = commands.add_parser('invariants', parents=[common], help='hyperplanes and generating polynomials')
    invariants.add_argument('action', choices=('hyperplanes', 'lrho', 'verify-jacobian'))

    hardy = commands.add_parser('hardy', parents=[common], help='quotient bases and kernels')
    hardy.add_argument('action', choices=('onb', 'kernel'))
    hardy.add_argument('--at', metavar='Z;W', help="fiber points, e.g. '0.4,0.1;0.2,0.3j'")

    toeplitz = commands.add_parser('toeplitz', parents=[common], help='Toeplitz matrices and transfer checks')
    toeplitz.add_argument('action', choices=TOEPLITZ_CHECKS)
    for name in ('symbol', 'u', 'v', 'q'):
        toeplitz.add_argument(f'--{name}', metavar='JSON', help='polynomial JSON or a path to it')

    commands.add_parser('verify-all', parents=[common], help='run every verification suite')
    return parser


def _group_spec(args):
    if args.group:
        data = load_json_file(args.group)
    elif args.family:
        data = {'family': args.family, 'd': args.d, 'm': args.m, 'orders': args.orders}
        data = {k: v for k, v in data.items() if v is not None}
    else:
        raise ConfigError("either --group or --family is required")
    is_valid, error = validate_group_spec(data)
    if not is_valid:
        raise ConfigError(error)
    return FamilySpec.from_dict(data)


def run_config_from_args(args):
    character = args.character
    if character is None:
        character = 'all' if args.command in ('verify-all', 'characters') or getattr(args, 'action', None) == 'lrho' else 'sign'
    return RunConfig(
        group=_group_spec(args),
        character=character,
        model=args.model,
        cutoff=args.cutoff,
        degree=args.degree,
        tolerances=tolerances_from(Config, args.tol),
        output_format=args.format,
        seed=args.seed,
        out=args.out,
        basic_map=_map_arg(args.map) if args.map else None,
    )


def _json_arg(value, name):
    if os.path.exists(value):
        return load_json_file(value)
    try:
        return json.loads(value)
    except json.JSONDecodeError as e:
        raise ConfigError(f"--{name} is neither a file nor JSON: {e}") from e


def _polynomial_arg(value, d, name):
    data = _json_arg(value, name)
    is_valid, error = validate_polynomial(data, name, dimension=d)
    if not is_valid:
        raise ConfigError(error)
    return data


def _map_arg(value):
    data = _json_arg(value, 'map')
    if not isinstance(data, list) or not data:
        raise ConfigError("--map must be a non-empty list of polynomials")
    for k, component in enumerate(data):
        is_valid, error = validate_polynomial(component, f'map component {k + 1}')
        if not is_valid:
            raise ConfigError(error)
    return tuple(data)


def _points(value):
    if not value or ';' not in value:
        raise ConfigError("--at needs two points separated by ';'")
    try:
        return [[complex(x.strip().replace(' ', '')) for x in part.split(',')] for part in value.split(';', 1)]
    except ValueError as e:
        raise ConfigError(f"cannot parse --at: {e}") from e


def execute(args, config):
    """Returns (payload, reports); reports decide the exit code"""
    if args.command == 'verify-all':
        reports = verify_all(config)
        return {'config': config.to_dict(), 'reports': [r.to_dict() for r in reports]}, reports

    ctx = GroupContext(config)
    if args.command == 'describe':
        return describe(ctx), []
    if args.command == 'characters':
        return characters_payload(ctx), []
    if args.command == 'invariants':
        if args.action == 'hyperplanes':
            return ctx.hyperplanes.to_dict(), []
        if args.action == 'lrho':
            return lrho_payload(ctx), []
        return jacobian_payload(ctx), []
    if args.command == 'hardy':
        if args.action == 'onb':
            return onb_payload(ctx), []
        z, w = _points(args.at)
        return kernel_payload(ctx, z, w), []

    d = ctx.group.dimension
    symbols = {}
    for name in ('u', 'v', 'q'):
        value = getattr(args, name) or (args.symbol if name == 'u' else None)
        if value:
            symbols[name] = _polynomial_arg(value, d, name)
    result = toeplitz_payload(ctx, args.action, symbols)
    if isinstance(result, VerificationReport):
        return result.to_dict(), [result]
    return result, []


def _emit(text, out):
    if out:
        with open(out, 'w', encoding='utf-8') as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else getattr(logging, Config.QH_LOG_LEVEL, logging.INFO),
        format='%(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )
    try:
        config = run_config_from_args(args)
        payload, reports = execute(args, config)
    except (ConfigError, ValueError, OSError) as e:
        logger.error("configuration error: %s", e)
        return EXIT_CONFIG
    except QuotientHardyError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_FAIL
    except Exception:
        logger.exception("%s failed", args.command)
        return EXIT_FAIL

    if config.output_format == 'csv':
        if not reports:
            logger.error("csv output is only available for verification reports")
            return EXIT_CONFIG
        _emit(reports_to_csv(reports), config.out)
    else:
        _emit(dump_json(payload), config.out)

    failed = [r.name for r in reports if not r.passed]
    if failed:
        logger.warning("failed checks: %s", ", ".join(failed))
        return EXIT_FAIL
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
