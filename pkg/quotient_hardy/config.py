import os
from dotenv import load_dotenv

from quotient_hardy.core.tolerances import Tolerances

# Load .env only for LOCAL development
load_dotenv()


def _float(name, default):
    return float(os.environ.get(name, default))


def _int(name, default):
    return int(os.environ.get(name, default))


class Config:
    # Numerical tolerances
    QH_TOL = _float('QH_TOL', 1e-9)
    QH_DROP_TOL = _float('QH_DROP_TOL', 1e-12)
    QH_DIV_TOL = _float('QH_DIV_TOL', 1e-9)
    QH_OPERATOR_TOL = _float('QH_OPERATOR_TOL', 1e-8)

    # Group construction limits
    QH_CLOSURE_CAP = _int('QH_CLOSURE_CAP', 20000)
    QH_ORDER_CAP = _int('QH_ORDER_CAP', 1000)

    # Kernel series oracle
    QH_KERNEL_DEGREE = _int('QH_KERNEL_DEGREE', 40)
    QH_KERNEL_TOL = _float('QH_KERNEL_TOL', 1e-6)
    QH_KERNEL_POINTS = _int('QH_KERNEL_POINTS', 20)

    # verify-all sample sizes
    QH_PROJECTION_SAMPLES = _int('QH_PROJECTION_SAMPLES', 200)
    QH_STANLEY_SAMPLES = _int('QH_STANLEY_SAMPLES', 100)
    QH_RANDOM_DEGREE = _int('QH_RANDOM_DEGREE', 8)
    QH_SCHUR_DEGREE = _int('QH_SCHUR_DEGREE', 8)
    QH_BROWN_HALMOS_CUTOFF = _int('QH_BROWN_HALMOS_CUTOFF', 12)

    QH_DEFAULT_SEED = _int('QH_DEFAULT_SEED', 0)

    # Largest degree cutoff accepted over HTTP
    QH_MAX_CUTOFF = _int('QH_MAX_CUTOFF', 24)

    QH_LOG_LEVEL = os.environ.get('QH_LOG_LEVEL', 'INFO').upper()

    # Rate limiting
    RATELIMIT_ENABLED = os.environ.get('RATELIMIT_ENABLED', 'True').lower() == 'true'
    RATELIMIT_STORAGE_URI = os.environ.get('REDIS_URL', 'memory://')


class TestConfig(Config):
    TESTING = True
    RATELIMIT_ENABLED = False
    QH_KERNEL_DEGREE = 24
    QH_KERNEL_POINTS = 4
    QH_PROJECTION_SAMPLES = 6
    QH_STANLEY_SAMPLES = 6
    QH_RANDOM_DEGREE = 4
    QH_SCHUR_DEGREE = 5
    QH_BROWN_HALMOS_CUTOFF = 4
    QH_MAX_CUTOFF = 10


def setting(settings, name):
    """Read a setting from a Config class or a Flask config mapping"""
    if isinstance(settings, dict):
        return settings[name]
    return getattr(settings, name)


def tolerances_from(settings, eps=None):
    """Tolerances built from settings; eps overrides QH_TOL"""
    return Tolerances(
        eps=eps if eps is not None else setting(settings, 'QH_TOL'),
        drop=setting(settings, 'QH_DROP_TOL'),
        div=setting(settings, 'QH_DIV_TOL'),
        operator=setting(settings, 'QH_OPERATOR_TOL'),
    )
