"""Useful types specific to the isomatrix toolkit."""

from ._errors import (  # noqa F401
    ConstantMapDegenerate,
    CoordinateBlowup,
    DegenerateLambda,
    HypothesisViolation,
    InsufficientImaginaryPart,
    InvalidDiscriminant,
    IsomatrixError,
    IsomatrixExit,
    NotOnCurve,
    ParentMismatch,
    ParseError,
    PoleAtLatticePoint,
    PrecisionExhausted,
    RecognitionFailed,
    ValidationError,
)
from ._records import (  # noqa F401
    DomainTag,
    EllipticLogarithm,
    HalfPeriodValues,
    HeightValue,
    Matrix2,
    Number,
    PeriodPoint,
    PrecisionContext,
    ProjectiveTriple,
    QSeriesValue,
)
