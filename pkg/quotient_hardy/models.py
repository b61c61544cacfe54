"""
Value objects shared by the core, the CLI and the HTTP routes
"""
from dataclasses import dataclass, field

from quotient_hardy.core.errors import ConfigError
from quotient_hardy.core.group_core import FamilySpec
from quotient_hardy.core.tolerances import DEFAULT_TOLERANCES, Tolerances

PASS = 'PASS'
FAIL = 'FAIL'
PRECONDITION_VIOLATED = 'PRECONDITION_VIOLATED'

OUTPUT_FORMATS = ('json', 'csv')


def _clean_float(value):
    value = float(value)
    return round(value, 15) + 0.0


@dataclass
class VerificationReport:
    name: str
    verdict: str
    max_deviation: float = 0.0
    exact_region_size: int = 0
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.verdict == PASS

    @classmethod
    def from_deviation(cls, name, deviation, tolerance, exact_region_size, details=None):
        verdict = PASS if deviation < tolerance else FAIL
        return cls(name, verdict, float(deviation), int(exact_region_size), details or {})

    @classmethod
    def precondition_violated(cls, name, reason):
        return cls(name, PRECONDITION_VIOLATED, details={'reason': reason})

    def to_dict(self):
        """Convert report to dictionary"""
        return {
            'name': self.name,
            'verdict': self.verdict,
            'max_deviation': _clean_float(self.max_deviation),
            'exact_region_size': self.exact_region_size,
            'details': self.details,
        }

    def to_row(self):
        return [self.name, self.verdict, f"{self.max_deviation:.3e}", str(self.exact_region_size)]


@dataclass(frozen=True)
class RunConfig:
    """Everything a CLI run or HTTP request needs besides the command itself"""
    group: FamilySpec
    character: str = 'sign'
    model: str = 'polydisc'
    cutoff: int = 6
    degree: int = 6
    tolerances: Tolerances = DEFAULT_TOLERANCES
    output_format: str = 'json'
    seed: int = 0
    out: str = None
    basic_map: tuple = None

    def __post_init__(self):
        if self.cutoff < 1 or self.degree < 1:
            raise ConfigError("cutoffs must be at least 1")
        if self.model not in ('polydisc', 'ball'):
            raise ConfigError(f"unknown model {self.model!r}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ConfigError(f"unknown output format {self.output_format!r}")

    def to_dict(self):
        return {
            'group': self.group.to_dict(),
            'character': self.character,
            'model': self.model,
            'cutoff': self.cutoff,
            'degree': self.degree,
            'tolerance': self.tolerances.eps,
            'seed': self.seed,
            'basic_map': list(self.basic_map) if self.basic_map else None,
        }
