from flask import Blueprint, request, jsonify, current_app

from quotient_hardy import limiter
from quotient_hardy.core.errors import QuotientHardyError
from quotient_hardy.models import VerificationReport
from quotient_hardy.routes.common import run_config_from_request
from quotient_hardy.services import TOEPLITZ_CHECKS, GroupContext, toeplitz_payload
from quotient_hardy.utils.validators import validate_enum, validate_polynomial

toeplitz_bp = Blueprint('toeplitz', __name__)


@toeplitz_bp.route('/<check>', methods=['POST'])
@limiter.limit("10 per minute")
def run_check(check):
    """Toeplitz matrix or one of the transfer / reducing / Brown-Halmos checks"""
    try:
        is_valid, error = validate_enum(check, 'Check', TOEPLITZ_CHECKS)
        if not is_valid:
            return jsonify({'success': False, 'error': error}), 404

        data = request.get_json(silent=True)
        config, error = run_config_from_request(data)
        if error:
            return jsonify({'success': False, 'error': error}), 400

        ctx = GroupContext(config, current_app.config)
        symbols = {}
        for name in ('u', 'v', 'q'):
            value = data.get(name)
            if value is None and name == 'u':
                value = data.get('symbol')
            if value is None:
                continue
            is_valid, error = validate_polynomial(value, name, dimension=ctx.group.dimension)
            if not is_valid:
                return jsonify({'success': False, 'error': error}), 400
            symbols[name] = value

        result = toeplitz_payload(ctx, check, symbols)
        if isinstance(result, VerificationReport):
            result = result.to_dict()
        return jsonify({'success': True, 'data': result}), 200

    except QuotientHardyError as e:
        return jsonify({'success': False, 'error': str(e)}), 400
    except Exception as e:
        current_app.logger.exception("toeplitz %s failed", check)
        return jsonify({'success': False, 'error': f'Toeplitz check failed: {str(e)}'}), 500
