from flask import Blueprint, request, jsonify, current_app

from quotient_hardy import limiter
from quotient_hardy.core.errors import QuotientHardyError
from quotient_hardy.routes.common import run_config_from_request
from quotient_hardy.services import GroupContext, kernel_payload, onb_payload
from quotient_hardy.utils.validators import parse_point, validate_point

hardy_bp = Blueprint('hardy', __name__)


@hardy_bp.route('/onb', methods=['POST'])
@limiter.limit("20 per minute")
def orthonormal_basis():
    """Orthonormal basis e_m of H^2_chi(theta(Omega)) with lifts"""
    try:
        config, error = run_config_from_request(request.get_json(silent=True))
        if error:
            return jsonify({'success': False, 'error': error}), 400

        ctx = GroupContext(config, current_app.config)
        return jsonify({'success': True, 'data': onb_payload(ctx)}), 200

    except QuotientHardyError as e:
        return jsonify({'success': False, 'error': str(e)}), 400
    except Exception as e:
        current_app.logger.exception("onb failed")
        return jsonify({'success': False, 'error': f'Failed to build basis: {str(e)}'}), 500


@hardy_bp.route('/kernel', methods=['POST'])
@limiter.limit("60 per minute")
def kernel():
    """Closed-form kernels at a pair of fiber points"""
    try:
        data = request.get_json(silent=True)
        config, error = run_config_from_request(data)
        if error:
            return jsonify({'success': False, 'error': error}), 400

        ctx = GroupContext(config, current_app.config)
        d = ctx.group.dimension
        for name in ('z', 'w'):
            is_valid, error = validate_point(data.get(name), d, name)
            if not is_valid:
                return jsonify({'success': False, 'error': error}), 400

        payload = kernel_payload(ctx, parse_point(data['z']), parse_point(data['w']))
        return jsonify({'success': True, 'data': payload}), 200

    except QuotientHardyError as e:
        return jsonify({'success': False, 'error': str(e)}), 400
    except Exception as e:
        current_app.logger.exception("kernel failed")
        return jsonify({'success': False, 'error': f'Failed to evaluate kernel: {str(e)}'}), 500
