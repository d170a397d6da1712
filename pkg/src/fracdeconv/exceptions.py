"""Exception types shared across the library."""


class InvalidInputError(ValueError):
    """Malformed or out-of-contract input (bad grid size, bad parameters)."""


class SymmetryError(InvalidInputError):
    """A real signal was requested from a non-Hermitian coefficient set."""

    def __init__(self, message: str, max_asymmetry: float):
        super().__init__(f"{message} (max asymmetry {max_asymmetry:.3e})")
        self.max_asymmetry = max_asymmetry


class LevelOverflowError(InvalidInputError):
    """A wavelet level's frequency band does not fit the grid."""

    def __init__(self, level: int, n: int, max_level: int):
        super().__init__(
            f"level {level} exceeds the grid n={n}; the largest usable level is {max_level}"
        )
        self.level = level
        self.max_level = max_level


class SynthesisFailureError(RuntimeError):
    """Noise synthesis failed (non-embeddable covariance)."""


class InfeasibleLevelsError(RuntimeError):
    """Level selection produced an empty wavelet range (J <= m0)."""


class EstimationFailureError(RuntimeError):
    """A statistical estimation step could not produce a result."""
