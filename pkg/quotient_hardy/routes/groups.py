from flask import Blueprint, request, jsonify, current_app

from quotient_hardy import limiter
from quotient_hardy.core.errors import QuotientHardyError
from quotient_hardy.routes.common import run_config_from_request
from quotient_hardy.services import GroupContext, characters_payload, describe

groups_bp = Blueprint('groups', __name__)


@groups_bp.route('/describe', methods=['POST'])
@limiter.limit("60 per minute")
def describe_group():
    """Order, hyperplanes, characters, basic map and Jacobian constant of a group"""
    try:
        config, error = run_config_from_request(request.get_json(silent=True))
        if error:
            return jsonify({'success': False, 'error': error}), 400

        ctx = GroupContext(config, current_app.config)
        return jsonify({
            'success': True,
            'data': describe(ctx)
        }), 200

    except QuotientHardyError as e:
        return jsonify({'success': False, 'error': str(e)}), 400
    except Exception as e:
        current_app.logger.exception("describe failed")
        return jsonify({
            'success': False,
            'error': f'Failed to describe group: {str(e)}'
        }), 500


@groups_bp.route('/characters', methods=['POST'])
@limiter.limit("60 per minute")
def list_characters():
    """One-dimensional characters with exponents"""
    try:
        config, error = run_config_from_request(request.get_json(silent=True))
        if error:
            return jsonify({'success': False, 'error': error}), 400

        ctx = GroupContext(config, current_app.config)
        return jsonify({
            'success': True,
            'data': characters_payload(ctx)
        }), 200

    except QuotientHardyError as e:
        return jsonify({'success': False, 'error': str(e)}), 400
    except Exception as e:
        current_app.logger.exception("characters failed")
        return jsonify({
            'success': False,
            'error': f'Failed to compute characters: {str(e)}'
        }), 500
