"""Exceptions raised by the isomatrix library and command line."""


class IsomatrixError(Exception):
    """Root of every error the isomatrix library raises on purpose."""


class IsomatrixExit(IsomatrixError):
    """Tell the app to stop without printing any results."""


class PrecisionExhausted(IsomatrixError):
    """A numeric test landed between its accept and reject thresholds, or failed to converge."""


class DegenerateLambda(IsomatrixError, ValueError):
    """The Legendre parameter is 0, 1, or inside the exclusion radius around them."""


class PoleAtLatticePoint(IsomatrixError):
    pass


class NotOnCurve(IsomatrixError, ValueError):
    pass


class InsufficientImaginaryPart(IsomatrixError, ValueError):
    pass


class ParentMismatch(IsomatrixError, ValueError):
    """Two curve points live on different Legendre curves."""


class CoordinateBlowup(IsomatrixError):
    """Exact coordinates grew past the configured bit-size cap."""


class RecognitionFailed(IsomatrixError):
    """A numeric value could not be recognized as an element of Q or Q(i)."""


class InvalidDiscriminant(IsomatrixError, ValueError):
    pass


class ParseError(IsomatrixError, ValueError):
    def __init__(self, reason: str, position: int = -1, field: str = ""):
        self.reason = reason
        self.position = position
        self.field = field
        where = f" in '{field}'" if field else ""
        at = f" at position {position}" if position >= 0 else ""
        super().__init__(f"parse error{where}{at}: {reason}")


class ValidationError(IsomatrixError, ValueError):
    def __init__(self, invariant: str, detail: str = ""):
        self.invariant = invariant
        super().__init__(f"{invariant}: {detail}" if detail else invariant)


class ConstantMapDegenerate(IsomatrixError, ValueError):
    pass


class HypothesisViolation(IsomatrixError):
    """The scan refuses to run because a hypothesis of the search is not met."""
