from flask import Blueprint, request, jsonify, current_app

from quotient_hardy import limiter
from quotient_hardy.core.errors import QuotientHardyError
from quotient_hardy.routes.common import run_config_from_request
from quotient_hardy.services import GroupContext, jacobian_payload, lrho_payload

invariants_bp = Blueprint('invariants', __name__)


def _run(payload_fn, default_character='sign'):
    try:
        config, error = run_config_from_request(request.get_json(silent=True), default_character)
        if error:
            return jsonify({'success': False, 'error': error}), 400

        ctx = GroupContext(config, current_app.config)
        return jsonify({'success': True, 'data': payload_fn(ctx)}), 200

    except QuotientHardyError as e:
        return jsonify({'success': False, 'error': str(e)}), 400
    except Exception as e:
        current_app.logger.exception("invariants request failed")
        return jsonify({'success': False, 'error': f'Computation failed: {str(e)}'}), 500


@invariants_bp.route('/hyperplanes', methods=['POST'])
@limiter.limit("60 per minute")
def list_hyperplanes():
    """Reflecting hyperplanes with their orders"""
    return _run(lambda ctx: ctx.hyperplanes.to_dict())


@invariants_bp.route('/lrho', methods=['POST'])
@limiter.limit("60 per minute")
def generating_polynomials():
    """Generating polynomial of the selected character(s)"""
    return _run(lrho_payload, default_character='all')


@invariants_bp.route('/verify-jacobian', methods=['POST'])
@limiter.limit("60 per minute")
def verify_jacobian():
    """Constant c in J_theta = c * prod l_i^(m_i - 1)"""
    return _run(jacobian_payload)
