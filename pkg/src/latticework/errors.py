"""Exception hierarchy.

Every error carries a stable ``code`` string; the CLI prints it on stderr so
scripts can match on it without parsing messages.
"""


class LatticeworkError(Exception):
    code = "E_GENERIC"


class ScalarSyntaxError(LatticeworkError, ValueError):
    code = "E_SYNTAX"

    def __init__(self, message, text="", position=0):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}")


class DivisionByZero(LatticeworkError, ZeroDivisionError):
    code = "E_DIV_ZERO"


class FieldMismatch(LatticeworkError, TypeError):
    code = "E_FIELD"


class DimensionMismatch(LatticeworkError, ValueError):
    code = "E_DIM"


class SingularMatrix(LatticeworkError, ValueError):
    code = "E_SINGULAR"


class NotContained(LatticeworkError, ValueError):
    code = "E_NOT_CONTAINED"


class NotFiltered(LatticeworkError, ValueError):
    """A linear map does not carry F^k into F^k."""

    code = "E_NOT_FILTERED"


class NotAMorphism(LatticeworkError, ValueError):
    code = "E_NOT_MORPHISM"


class NotStrictExact(LatticeworkError, ValueError):
    code = "E_NOT_STRICT_EXACT"


class NotInGroup(LatticeworkError, ValueError):
    code = "E_NOT_IN_GROUP"


class InvariantViolation(LatticeworkError, ValueError):
    """Input data violates a named invariant of a domain type."""

    code = "E_INVARIANT"

    def __init__(self, invariant, message):
        self.invariant = invariant
        super().__init__(f"[{invariant}] {message}")


class IntegralityError(InvariantViolation):
    code = "E_DIEUDONNE_MANIN"

    def __init__(self, message):
        super().__init__("dieudonne_manin_integrality", message)


class UnknownSuite(LatticeworkError, KeyError):
    code = "E_UNKNOWN_SUITE"

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown suite"


class GenerationError(LatticeworkError, RuntimeError):
    code = "E_GENERATION"
