import logging

from flask import Flask
from flask_cors import CORS
from flask_limiter import Limiter
from flask_limiter.util import get_remote_address

from quotient_hardy.config import Config

limiter = Limiter(
    key_func=get_remote_address,
    default_limits=["200 per hour"],
    storage_uri="memory://",
    enabled=True
)


def create_app(config_class=Config):
    app = Flask(__name__)
    app.config.from_object(config_class)
    app.logger.setLevel(getattr(logging, app.config.get('QH_LOG_LEVEL', 'INFO'), logging.INFO))

    CORS(app)

    # Rate limiter reads RATELIMIT_ENABLED and RATELIMIT_STORAGE_URI from app.config
    limiter.init_app(app)

    # Register blueprints
    from quotient_hardy.routes.groups import groups_bp
    from quotient_hardy.routes.invariants import invariants_bp
    from quotient_hardy.routes.hardy import hardy_bp
    from quotient_hardy.routes.toeplitz import toeplitz_bp
    from quotient_hardy.routes.suites import suites_bp

    app.register_blueprint(groups_bp, url_prefix='/api/groups')
    app.register_blueprint(invariants_bp, url_prefix='/api/invariants')
    app.register_blueprint(hardy_bp, url_prefix='/api/hardy')
    app.register_blueprint(toeplitz_bp, url_prefix='/api/toeplitz')
    app.register_blueprint(suites_bp, url_prefix='/api')

    app.logger.info("quotient_hardy API ready (tolerance %s)", app.config.get('QH_TOL'))
    return app
