from flask import Blueprint, request, jsonify, current_app

from quotient_hardy import limiter
from quotient_hardy.core.errors import QuotientHardyError
from quotient_hardy.routes.common import run_config_from_request
from quotient_hardy.suites import verify_all

suites_bp = Blueprint('suites', __name__)


@suites_bp.route('/verify-all', methods=['POST'])
@limiter.limit("2 per minute")
def verify_everything():
    """Run every verification suite for one group"""
    try:
        config, error = run_config_from_request(request.get_json(silent=True), default_character='all')
        if error:
            return jsonify({'success': False, 'error': error}), 400

        reports = verify_all(config, current_app.config)
        passed = all(report.passed for report in reports)
        return jsonify({
            'success': True,
            'message': 'All checks passed' if passed else 'Some checks failed',
            'data': {
                'passed': passed,
                'config': config.to_dict(),
                'reports': [report.to_dict() for report in reports],
            }
        }), 200

    except QuotientHardyError as e:
        return jsonify({'success': False, 'error': str(e)}), 400
    except Exception as e:
        current_app.logger.exception("verify-all failed")
        return jsonify({'success': False, 'error': f'Verification failed: {str(e)}'}), 500
