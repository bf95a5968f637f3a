"""Group law on the Legendre curves Y^2 Z = X (X - Z) (X - lambda Z).

Points are exact (Fraction coordinates on a curve with rational lambda) or numeric
(mpmath complex coordinates). Exact inputs stay exact through every operation.
"""

import dataclasses
import math
from fractions import Fraction
from typing import Optional, Tuple, Union

import mpmath  # type: ignore
from mpmath import mp

from . import types
from .analytic_kernel import as_mpc

Scalar = Union[Fraction, mpmath.mpc]

# torsion of an elliptic curve over Q has order at most 12
RATIONAL_TORSION_BOUND = 12
MAX_TORSION_ORDER = 64


def _tolerance() -> mpmath.mpf:
    return mp.mpf(10) ** (-(mp.dps - 10))


def _exact(value) -> Optional[Fraction]:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return None


def _near(a, b) -> bool:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    a, b = as_mpc(a), as_mpc(b)
    return abs(a - b) <= _tolerance() * max(1, abs(a), abs(b))


@dataclasses.dataclass(frozen=True)
class LegendreParam:
    value: Scalar

    def __post_init__(self):
        exact = _exact(self.value)
        if exact is not None:
            object.__setattr__(self, "value", exact)
            if exact in (0, 1):
                raise types.DegenerateLambda(f"lambda = {exact} is not allowed")
        else:
            value = as_mpc(self.value)
            object.__setattr__(self, "value", value)
            if value == 0 or value == 1:
                raise types.DegenerateLambda(f"lambda = {value} is not allowed")

    @property
    def exact(self) -> bool:
        return isinstance(self.value, Fraction)

    @property
    def exactness_tag(self) -> str:
        return "exact" if self.exact else "numeric"

    def numeric(self) -> mpmath.mpc:
        return as_mpc(self.value)

    def same_curve(self, other: "LegendreParam") -> bool:
        return _near(self.value, other.value)


@dataclasses.dataclass(frozen=True)
class CurvePoint:
    """A projective point normalized to Z = 1, or [0 : 1 : 0]."""

    coords: types.ProjectiveTriple
    parent: LegendreParam

    def __post_init__(self):
        X, Y, Z = (
            _exact(c) if _exact(c) is not None else as_mpc(c) for c in self.coords
        )
        exact = all(isinstance(c, Fraction) for c in (X, Y, Z))
        if exact:
            zero = Z == 0
        else:
            X, Y, Z = as_mpc(X), as_mpc(Y), as_mpc(Z)
            zero = abs(Z) <= _tolerance() * max(abs(X), abs(Y))
        if zero:
            if (X == 0 and Y == 0) if exact else max(abs(X), abs(Y)) == 0:
                raise ValueError("[0 : 0 : 0] is not a projective point")
            one, nil = (Fraction(1), Fraction(0)) if exact else (mp.mpc(1), mp.mpc(0))
            object.__setattr__(self, "coords", types.ProjectiveTriple(nil, one, nil))
            return

        x, y = X / Z, Y / Z
        one = Fraction(1) if exact else mp.mpc(1)
        object.__setattr__(self, "coords", types.ProjectiveTriple(x, y, one))
        if not on_curve(x, y, self.parent.value if exact else self.parent.numeric()):
            raise types.NotOnCurve(f"({x}, {y}) is not on E_{self.parent.value}")

    @property
    def is_zero(self) -> bool:
        return self.coords.Z == 0

    @property
    def exact(self) -> bool:
        return self.parent.exact and isinstance(self.coords.X, Fraction)

    @property
    def x(self) -> Scalar:
        return self.coords.X

    @property
    def y(self) -> Scalar:
        return self.coords.Y

    def numeric(self) -> types.ProjectiveTriple:
        return types.ProjectiveTriple(*(as_mpc(c) for c in self.coords))

    def __neg__(self) -> "CurvePoint":
        return negate(self)

    def __add__(self, other: "CurvePoint") -> "CurvePoint":
        return add(self, other)

    def __rmul__(self, k: int) -> "CurvePoint":
        return scalar_mul(k, self)


def on_curve(x, y, lam) -> bool:
    residual = y * y - x * (x - 1) * (x - lam)
    if isinstance(residual, Fraction):
        return residual == 0
    scale = max(1, abs(x)) ** 3
    return abs(residual) <= _tolerance() * scale


def infinity(parent: LegendreParam) -> CurvePoint:
    return CurvePoint(types.ProjectiveTriple(0, 1, 0), parent)


def point(x, y, parent: LegendreParam) -> CurvePoint:
    return CurvePoint(types.ProjectiveTriple(x, y, 1), parent)


def two_torsion(parent: LegendreParam) -> Tuple[CurvePoint, ...]:
    """O, (0,0), (1,0), (lambda,0)."""
    return (
        infinity(parent),
        point(0, 0, parent),
        point(1, 0, parent),
        point(parent.value, 0, parent),
    )


def _rational_sqrt(value: Fraction) -> Optional[Fraction]:
    if value < 0:
        return None
    num, den = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


def lift_x(x, parent: LegendreParam, sign: int = 1) -> CurvePoint:
    """The point with abscissa x; exact when the ordinate is rational.

    sign picks the branch: the non-negative rational root, or the principal
    complex square root, multiplied by sign.
    """
    xe = _exact(x)
    if xe is not None and parent.exact:
        rhs = xe * (xe - 1) * (xe - parent.value)
        root = _rational_sqrt(rhs)
        if root is not None:
            return point(xe, sign * root, parent)
    xn = as_mpc(x)
    rhs_n = xn * (xn - 1) * (xn - parent.numeric())
    return point(xn, sign * mp.sqrt(rhs_n), parent)


def negate(P: CurvePoint) -> CurvePoint:
    if P.is_zero:
        return P
    return CurvePoint(types.ProjectiveTriple(P.x, -P.y, P.coords.Z), P.parent)


def add(P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    """Chord and tangent addition with O = [0 : 1 : 0] as identity."""
    if not P.parent.same_curve(Q.parent):
        raise types.ParentMismatch(
            f"points on E_{P.parent.value} and E_{Q.parent.value} cannot be added"
        )
    if P.is_zero:
        return Q
    if Q.is_zero:
        return P

    if P.exact and Q.exact:
        lam = P.parent.value
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    else:
        lam = P.parent.numeric()
        x1, y1, x2, y2 = (as_mpc(v) for v in (P.x, P.y, Q.x, Q.y))

    if _near(x1, x2):
        if _near(y1, -y2):
            return infinity(P.parent)
        slope = (3 * x1 * x1 - 2 * (1 + lam) * x1 + lam) / (2 * y1)
    else:
        slope = (y2 - y1) / (x2 - x1)

    x3 = slope * slope + (1 + lam) - x1 - x2
    y3 = -(y1 + slope * (x3 - x1))
    return point(x3, y3, P.parent)


def scalar_mul(k: int, P: CurvePoint) -> CurvePoint:
    if k < 0:
        return negate(scalar_mul(-k, P))
    result = infinity(P.parent)
    addend = P
    while k:
        if k & 1:
            result = add(result, addend)
        k >>= 1
        if k:
            addend = add(addend, addend)
    return result


def is_torsion(P: CurvePoint, max_order: int = MAX_TORSION_ORDER) -> Optional[int]:
    """Smallest n <= max_order with nP = O, or None."""
    if not 1 <= max_order <= MAX_TORSION_ORDER:
        raise ValueError(f"max_order must lie in [1, {MAX_TORSION_ORDER}]")
    if P.exact:
        max_order = min(max_order, RATIONAL_TORSION_BOUND)
    multiple = P
    for n in range(1, max_order + 1):
        if multiple.is_zero:
            return n
        multiple = add(multiple, P)
    return None


def j_invariant(lam) -> Scalar:
    """J(lambda) = 2^8 (lambda^2 - lambda + 1)^3 / (lambda^2 (lambda - 1)^2)."""
    if isinstance(lam, LegendreParam):
        value = lam.value
    else:
        value = LegendreParam(lam).value
    return 256 * (value * value - value + 1) ** 3 / (value * value * (value - 1) ** 2)
