"""Value types shared between the analytic, arithmetic and search layers."""

import dataclasses
import enum
import math
from typing import NamedTuple, Union

import mpmath  # type: ignore

Number = Union[int, mpmath.mpf, mpmath.mpc]


def _domain_slack() -> mpmath.mpf:
    """Slack for domain membership, matching the reduction tolerance at this precision."""
    return mpmath.mpf(10) ** (-(mpmath.mp.dps // 2 - 1))


@dataclasses.dataclass(frozen=True)
class PrecisionContext:
    """Working and certification precision, in decimal digits."""

    working_digits: int = 64
    certify_digits: int = 128

    def __post_init__(self):
        if self.working_digits < 30:
            raise ValueError(
                f"working_digits must be at least 30, got {self.working_digits}"
            )
        if self.certify_digits < 2 * self.working_digits:
            raise ValueError(
                "certify_digits must be at least twice working_digits "
                f"({self.certify_digits} < 2*{self.working_digits})"
            )

    @classmethod
    def with_working(cls, digits: int) -> "PrecisionContext":
        return cls(working_digits=digits, certify_digits=2 * digits)

    def escalated(self) -> "PrecisionContext":
        """The context used for the retry after an ambiguous numeric test."""
        return PrecisionContext(
            working_digits=2 * self.working_digits,
            certify_digits=max(self.certify_digits, 4 * self.working_digits),
        )

    def certifying(self) -> "PrecisionContext":
        """A context whose working precision is this context's certify precision."""
        return PrecisionContext(
            working_digits=self.certify_digits,
            certify_digits=2 * self.certify_digits,
        )

    @property
    def tolerance(self) -> mpmath.mpf:
        return mpmath.mpf(10) ** (-(self.working_digits - 10))

    @property
    def accept(self) -> mpmath.mpf:
        return mpmath.mpf(10) ** (-(self.working_digits - 15))

    @property
    def reject(self) -> mpmath.mpf:
        return mpmath.mpf(10) ** (-(self.working_digits / 4))

    @property
    def certify_tolerance(self) -> mpmath.mpf:
        return mpmath.mpf(10) ** (-(self.certify_digits - 20))


class DomainTag(enum.Enum):
    STANDARD = "Standard-SL2Z"
    SIXFOLD = "SixFold-B"
    UNREDUCED = "Unreduced"


class Matrix2(NamedTuple):
    """Integer 2x2 matrix (a, b; c, d) acting by Moebius transformation."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def identity(cls) -> "Matrix2":
        return cls(1, 0, 0, 1)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def act(self, tau):
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def automorphy(self, tau):
        """The factor c*tau + d."""
        return self.c * tau + self.d

    def __matmul__(self, other: "Matrix2") -> "Matrix2":  # type: ignore[override]
        return Matrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def adjugate(self) -> "Matrix2":
        return Matrix2(self.d, -self.b, -self.c, self.a)

    def inverse(self) -> "Matrix2":
        if self.det != 1:
            raise ValueError(f"{self} is not in SL2(Z)")
        return self.adjugate()

    @property
    def height(self) -> int:
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def is_primitive(self) -> bool:
        return math.gcd(math.gcd(self.a, self.b), math.gcd(self.c, self.d)) == 1


@dataclasses.dataclass(frozen=True)
class PeriodPoint:
    tau: mpmath.mpc
    domain_tag: DomainTag = DomainTag.UNREDUCED
    coset: int = 0

    def __post_init__(self):
        tau = mpmath.mpc(self.tau)
        object.__setattr__(self, "tau", tau)
        if tau.imag <= 0:
            raise ValueError(f"tau must lie in the upper half-plane, got {tau}")
        if self.domain_tag is DomainTag.STANDARD:
            slack = _domain_slack()
            if abs(tau.real) > mpmath.mpf(1) / 2 + slack or abs(tau) < 1 - slack:
                raise ValueError(f"{tau} is outside the standard fundamental domain")
        if not 0 <= self.coset < 6:
            raise ValueError(f"coset index {self.coset} out of range")


@dataclasses.dataclass(frozen=True)
class EllipticLogarithm:
    z: mpmath.mpc
    tau: PeriodPoint


@dataclasses.dataclass(frozen=True)
class HalfPeriodValues:
    e1: mpmath.mpc
    e2: mpmath.mpc
    e3: mpmath.mpc
    # holomorphic square root of e3 - e1, the scale of the Legendre model
    root31: mpmath.mpc

    @property
    def g2(self) -> mpmath.mpc:
        return 2 * (self.e1 ** 2 + self.e2 ** 2 + self.e3 ** 2)

    @property
    def g3(self) -> mpmath.mpc:
        return 4 * self.e1 * self.e2 * self.e3


class ProjectiveTriple(NamedTuple):
    X: Number
    Y: Number
    Z: Number


@dataclasses.dataclass(frozen=True)
class HeightValue:
    value: float
    error_bound: float = 0.0

    def __post_init__(self):
        if self.value < 0 or self.error_bound < 0:
            raise ValueError(f"heights are nonnegative: {self}")


@dataclasses.dataclass(frozen=True)
class QSeriesValue:
    value: mpmath.mpc
    truncation_bound: mpmath.mpf
