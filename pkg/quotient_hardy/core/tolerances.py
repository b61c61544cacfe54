from dataclasses import dataclass

DEFAULT_EPS = 1e-9
DEFAULT_DROP = 1e-12
DEFAULT_DIV = 1e-9
DEFAULT_OPERATOR = 1e-8


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds threaded through the core.

    eps: matrix/character equality and relative-invariance checks
    drop: coefficients below this modulus are removed after arithmetic
    div: remainder/residual bound for exact division and theta rewriting
    operator: deviation bound for Toeplitz identity checks
    """
    eps: float = DEFAULT_EPS
    drop: float = DEFAULT_DROP
    div: float = DEFAULT_DIV
    operator: float = DEFAULT_OPERATOR

    def __post_init__(self):
        for name in ('eps', 'drop', 'div', 'operator'):
            if getattr(self, name) <= 0:
                raise ValueError(f"tolerance {name} must be positive")


DEFAULT_TOLERANCES = Tolerances()
