"""Domain-specific exceptions.

``DomainError`` marks parameter regimes where a requested quantity is
mathematically undefined (as opposed to malformed input, which raises a
plain ``ValueError``). The CLI maps the two classes to distinct exit codes.
"""


class DomainError(ValueError):
    """Requested quantity is undefined in this parameter regime."""


class AboveThresholdError(DomainError):
    """Coupling at or above threshold: the tilt angle and the effective
    frequency are no longer real and the discrete spectrum formula fails."""


class SingularClosedFormError(DomainError):
    """The closed-form wavefunction hits its sigma = 1 pole; callers should
    fall back to the series route."""


class SeriesDivergenceError(DomainError):
    """Coherence parameter has modulus >= 1, so the ladder-expansion series
    does not converge."""
