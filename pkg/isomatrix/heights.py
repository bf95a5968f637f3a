"""Weil heights, the H1 height of parameters, and Neron-Tate heights.

Canonical heights use the projective embedding by (X : Y : Z), i.e. the divisor
3(O), without halving. The x-only variant works on the abscissa (divisor 2(O)) and
is rescaled by 3/2 so both variants agree.
"""

import dataclasses
import logging
import math
from fractions import Fraction
from typing import Any, Optional, Tuple, Union

import mpmath  # type: ignore
from mpmath import mp
from sympy import QQ, QQ_I  # type: ignore

from . import legendre_curves as lc
from . import types

logger = logging.getLogger(__name__)

MAX_DOUBLINGS = 10
DEFAULT_BIT_CAP = 1 << 18
HEIGHT_CONSTANT_FACTOR = 12
RECOGNITION_DENOMINATOR = 10 ** 15


# a Fraction, or an element of sympy's QQ_I
Algebraic = Any


@dataclasses.dataclass(frozen=True)
class IdentityResidual:
    """|h(phi P) - deg(phi) h(P)| with the error budget it must stay under."""

    residual: float
    budget: float
    lhs: types.HeightValue
    rhs: types.HeightValue

    @property
    def holds(self) -> bool:
        return self.residual <= self.budget


def _as_fraction(x) -> Optional[Fraction]:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return None


def _log_abs(n: int) -> float:
    return math.log(abs(n)) if n else 0.0


def weil_height_rational(x) -> types.HeightValue:
    """log max(|p|, |q|) for x = p/q in lowest terms."""
    value = Fraction(x)
    return types.HeightValue(
        _log_abs(max(abs(value.numerator), abs(value.denominator)))
    )


def h1_height(x) -> Union[int, float]:
    """max(|p|, |q|) for an exact rational x = p/q, +inf for anything else."""
    value = _as_fraction(x)
    if value is None:
        return math.inf
    return max(abs(value.numerator), abs(value.denominator))


def _qq(x: Fraction):
    return QQ(x.numerator, x.denominator)


def _fraction(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def gaussian(re, im=0):
    """The element re + i*im of Q(i)."""
    return QQ_I(_qq(Fraction(re)), _qq(Fraction(im)))


def gaussian_parts(x) -> Tuple[Fraction, Fraction]:
    return _fraction(x.x), _fraction(x.y)


def weil_height(x: Algebraic) -> float:
    """Absolute logarithmic Weil height of a rational or Gaussian rational."""
    value = _as_fraction(x)
    if value is not None:
        return weil_height_rational(value).value
    re, im = gaussian_parts(x)
    if im == 0:
        return weil_height_rational(re).value

    # minimal polynomial X^2 - 2 re X + |x|^2, made primitive over Z
    norm = re * re + im * im
    trace = 2 * re
    lead = math.lcm(trace.denominator, norm.denominator)
    c1, c0 = int(trace * lead), int(norm * lead)
    content = math.gcd(math.gcd(lead, c1), c0)
    lead //= content
    log_modulus = (_log_abs(norm.numerator) - _log_abs(norm.denominator)) / 2
    return (_log_abs(lead) + 2 * max(0.0, log_modulus)) / 2


def height_constant(lam) -> float:
    """Explicit constant c_lambda bounding |h(P) - h_hat(P)| for points on E_lambda."""
    return HEIGHT_CONSTANT_FACTOR * max(1.0, weil_height(lam))


def point_height(P: lc.CurvePoint) -> float:
    """log max(|X|, |Y|, |Z|) over coprime integer coordinates."""
    if P.is_zero:
        return 0.0
    x, y = P.x, P.y
    denominator = math.lcm(x.denominator, y.denominator)
    coords = (int(x * denominator), int(y * denominator), denominator)
    content = math.gcd(math.gcd(coords[0], coords[1]), coords[2])
    return _log_abs(max(abs(c) for c in coords) // content)


def _bits(P: lc.CurvePoint) -> int:
    if P.is_zero:
        return 0
    return max(
        max(c.numerator.bit_length(), c.denominator.bit_length())
        for c in (P.x, P.y)
    )


def neron_tate(
    P: lc.CurvePoint, max_doublings: int = 5, bit_cap: int = DEFAULT_BIT_CAP
) -> types.HeightValue:
    """4^-n h(2^n P) at the largest n <= max_doublings the bit cap allows.

    error_bound is c / 4^n for the n actually reached, so when the bit cap stops
    the doublings early a larger max_doublings does not tighten it.
    """
    if not P.exact:
        raise ValueError("the canonical height needs an exact rational point")
    if not 0 <= max_doublings <= MAX_DOUBLINGS:
        raise ValueError(f"max_doublings must lie in [0, {MAX_DOUBLINGS}]")
    if _bits(P) > bit_cap:
        raise types.CoordinateBlowup(f"{P} already exceeds {bit_cap} bits")

    constant = height_constant(P.parent.value)
    multiple, doublings = P, 0
    for k in range(1, max_doublings + 1):
        doubled = lc.add(multiple, multiple)
        if _bits(doubled) > bit_cap:
            if k == 1:
                raise types.CoordinateBlowup(f"2P exceeds {bit_cap} bits")
            logger.info(
                "stopping after %d of %d doublings, bit cap reached",
                k - 1,
                max_doublings,
            )
            break
        multiple, doublings = doubled, k

    scale = 4 ** doublings
    return types.HeightValue(point_height(multiple) / scale, constant / scale)


def _x_bits(x) -> int:
    if isinstance(x, Fraction):
        parts: Tuple[Fraction, ...] = (x,)
    else:
        parts = gaussian_parts(x)
    return max(max(p.numerator.bit_length(), p.denominator.bit_length()) for p in parts)


def _double_x(x, lam):
    """Abscissa of 2P from the abscissa of P; None stands for O."""
    denominator = 4 * x * (x - 1) * (x - lam)
    if not denominator:
        return None
    return (x * x - lam) ** 2 / denominator


def neron_tate_x(
    x: Algebraic,
    lam: Algebraic,
    max_doublings: int = 5,
    bit_cap: int = DEFAULT_BIT_CAP,
) -> types.HeightValue:
    """Canonical height from the abscissa alone, over Q or Q(i).

    Uses the x-doubling map, so only x(P) is needed; the value is rescaled to the
    normalization of neron_tate.
    """
    if not 0 <= max_doublings <= MAX_DOUBLINGS:
        raise ValueError(f"max_doublings must lie in [0, {MAX_DOUBLINGS}]")
    constant = height_constant(lam)
    exact = isinstance(x, (Fraction, int)) and isinstance(lam, (Fraction, int))
    if exact:
        current: Optional[Algebraic] = Fraction(x)
        field_lam: Algebraic = Fraction(lam)
    else:
        current = x if not isinstance(x, (Fraction, int)) else gaussian(x)
        field_lam = lam if not isinstance(lam, (Fraction, int)) else gaussian(lam)

    if _x_bits(current) > bit_cap:
        raise types.CoordinateBlowup(f"x = {x} already exceeds {bit_cap} bits")

    doublings = 0
    for k in range(1, max_doublings + 1):
        if current is None:
            doublings = k
            continue
        doubled = _double_x(current, field_lam)
        if doubled is not None and _x_bits(doubled) > bit_cap:
            if k == 1:
                raise types.CoordinateBlowup(f"x(2P) exceeds {bit_cap} bits")
            break
        current, doublings = doubled, k

    scale = 4 ** doublings
    value = 0.0 if current is None else 1.5 * weil_height(current)
    return types.HeightValue(value / scale, constant / scale)


def _fraction_of_mpf(value: mpmath.mpf) -> Fraction:
    man, exp = value.man, value.exp
    return Fraction(int(man)) * Fraction(2) ** int(exp) if man else Fraction(0)


def _recognize_real(value: mpmath.mpf, max_denominator: int) -> Fraction:
    candidate = _fraction_of_mpf(value).limit_denominator(max_denominator)
    slack = mp.mpf(10) ** (-(mp.dps // 2))
    if abs(value - mp.mpf(candidate.numerator) / candidate.denominator) > slack * max(
        1, abs(value)
    ):
        raise types.RecognitionFailed(f"{value} is not a recognizable rational")
    return candidate


def recognize_coordinate(
    value, max_denominator: int = RECOGNITION_DENOMINATOR
) -> Algebraic:
    """An exact element of Q or Q(i) equal to a numeric value at current precision."""
    exact = _as_fraction(value)
    if exact is not None:
        return exact
    value = mp.mpc(value)
    re = _recognize_real(value.real, max_denominator)
    slack = mp.mpf(10) ** (-(mp.dps // 2))
    if abs(value.imag) <= slack * max(1, abs(value)):
        return re
    im = _recognize_real(value.imag, max_denominator)
    return gaussian(re, im)


def _exact_abscissa(P: lc.CurvePoint) -> Tuple[Optional[Algebraic], Algebraic]:
    lam = P.parent.value
    exact_lam = lam if P.parent.exact else recognize_coordinate(lam)
    if P.is_zero:
        return None, exact_lam
    x = P.x if P.exact else recognize_coordinate(P.x)
    return x, exact_lam


def check_isogeny_height_identity(
    P: lc.CurvePoint,
    phi_degree: int,
    phi_image: lc.CurvePoint,
    max_doublings: int = 5,
) -> IdentityResidual:
    """Compare h_hat(phi P) with deg(phi) * h_hat(P).

    Exact rational points use the projective height. Otherwise the abscissae and
    curve parameters are recognized in Q or Q(i) and the x-only height is used on
    both sides.
    """
    if P.exact and phi_image.exact:
        lhs = neron_tate(phi_image, max_doublings)
        base = neron_tate(P, max_doublings)
    else:
        x_image, lam_image = _exact_abscissa(phi_image)
        x_point, lam_point = _exact_abscissa(P)
        lhs = (
            types.HeightValue(0.0)
            if x_image is None
            else neron_tate_x(x_image, lam_image, max_doublings)
        )
        base = (
            types.HeightValue(0.0)
            if x_point is None
            else neron_tate_x(x_point, lam_point, max_doublings)
        )

    rhs = types.HeightValue(phi_degree * base.value, phi_degree * base.error_bound)
    return IdentityResidual(
        residual=abs(lhs.value - rhs.value),
        budget=lhs.error_bound + rhs.error_bound,
        lhs=lhs,
        rhs=rhs,
    )
