class NotAResidueError(ValueError):
    """sqrt(D) does not exist in Q_p."""


class InvariantViolation(RuntimeError):
    """A property that theory guarantees failed to hold.

    These are the interesting failures: either a bug or a counterexample.
    """


class ImpossibleStateError(InvariantViolation):
    pass


class TerminatedExpansionError(ValueError):
    """The complete quotient equals its own floor, so there is no next step."""
