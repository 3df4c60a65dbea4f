"""Exception types shared across the package.

The CLI maps these onto exit codes: scenario/flag problems exit with 2,
physics-domain problems (truncation, empty post-selection, perturbative
domain) exit with 3.
"""

__all__ = [
    "PhysicsDomainError",
    "TruncationError",
    "PerturbationError",
    "EmptyPatternError",
    "SpaceMismatchError",
    "ScenarioError",
]


class PhysicsDomainError(ValueError):
    """A parameter lies outside the model's validity domain."""


class TruncationError(PhysicsDomainError):
    """Displacement amplitude too large for the requested Fock truncation."""


class PerturbationError(PhysicsDomainError):
    """Parameter outside the small-kick regime a first-order treatment assumes."""


class EmptyPatternError(PhysicsDomainError):
    """Every path amplitude vanished, e.g. after conditioning on an empty sector."""


class SpaceMismatchError(ValueError):
    """Operands live in incompatible Fock spaces."""


class ScenarioError(ValueError):
    """Unsupported combination of configuration, pulse regime and treatment."""
