"""Rational functions of one variable t with rational coefficients."""

import dataclasses
import re
from fractions import Fraction
from typing import List, Optional, Tuple

import sympy  # type: ignore
from sympy import QQ  # type: ignore
from sympy.parsing import sympy_parser  # type: ignore

from isomatrix import types

T = sympy.Symbol("t")

_ALLOWED = re.compile(r"[0-9t+\-*/^()\s]")
_TRANSFORMS = sympy_parser.standard_transformations + (sympy_parser.convert_xor,)


def _rational(x: Fraction) -> sympy.Rational:
    return sympy.Rational(x.numerator, x.denominator)


def _fraction(r) -> Fraction:
    """A sympy Rational (or Integer) as a Fraction."""
    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


@dataclasses.dataclass(frozen=True)
class RationalMap:
    """numerator / denominator in lowest terms, the denominator monic."""

    numerator: sympy.Poly
    denominator: sympy.Poly

    @classmethod
    def from_expr(cls, expr) -> "RationalMap":
        num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
        num, den = sympy.Poly(num, T, domain=QQ), sympy.Poly(den, T, domain=QQ)
        if den.is_zero:
            raise ZeroDivisionError("denominator vanishes identically")
        g = sympy.gcd(num, den)
        num, den = num.exquo(g), den.exquo(g)
        lead = den.LC()
        return cls(num.quo_ground(lead), den.quo_ground(lead))

    @classmethod
    def constant(cls, value) -> "RationalMap":
        return cls.from_expr(_rational(Fraction(value)))

    def as_expr(self):
        return self.numerator.as_expr() / self.denominator.as_expr()

    @property
    def is_constant(self) -> bool:
        return self.numerator.degree() <= 0 and self.denominator.degree() <= 0

    @property
    def degree(self) -> int:
        """Degree as a map P^1 -> P^1; 0 for constants."""
        return max(self.numerator.degree(), self.denominator.degree(), 0)

    def __call__(self, t) -> Optional[Fraction]:
        """Exact value at a rational t, None at a pole."""
        x = _rational(Fraction(t))
        den = self.denominator.eval(x)
        if den == 0:
            return None
        return _fraction(self.numerator.eval(x)) / _fraction(den)

    def compose_into(self, outer: "RationalMap") -> "RationalMap":
        """outer(self(t))."""
        return RationalMap.from_expr(outer.as_expr().subs(T, self.as_expr()))

    def __str__(self) -> str:
        return str(sympy.simplify(self.as_expr()))


def parse_rational_function(text: str, field: str = "") -> RationalMap:
    """Parse a rational function of t written with + - * / ^ and parentheses."""
    if not text.strip():
        raise types.ParseError("empty expression", 0, field)
    for position, char in enumerate(text):
        if not _ALLOWED.match(char):
            raise types.ParseError(f"unexpected character '{char}'", position, field)
    try:
        expr = sympy_parser.parse_expr(
            text, local_dict={"t": T}, transformations=_TRANSFORMS
        )
        return RationalMap.from_expr(sympy.sympify(expr))
    except ZeroDivisionError as e:
        raise types.ParseError(str(e), -1, field)
    except Exception as e:  # tokenizer and syntax errors surface under several names
        raise types.ParseError(f"malformed expression '{text}' ({e})", -1, field)


J_MAP = RationalMap.from_expr(
    256 * (T ** 2 - T + 1) ** 3 / (T ** 2 * (T - 1) ** 2)
)


def j_composed(lam: RationalMap) -> RationalMap:
    """J(lambda(t)) as a rational function of t."""
    return lam.compose_into(J_MAP)


def integer_coefficients(poly: sympy.Poly) -> sympy.Poly:
    """The primitive integer polynomial with the same roots, positive leading term."""
    _, cleared = poly.clear_denoms(convert=True)
    if cleared.is_zero:
        return cleared
    _, primitive = cleared.primitive()
    return primitive if primitive.LC() > 0 else -primitive


def rational_roots(poly: sympy.Poly) -> List[Fraction]:
    """Distinct rational roots, ascending, from the linear factors over Q."""
    if poly.is_zero:
        raise ValueError("the zero polynomial has every t as a root")
    roots = []
    for factor, _ in sympy.Poly(poly, T, domain=QQ).factor_list()[1]:
        if factor.degree() == 1:
            a, b = factor.all_coeffs()
            roots.append(-_fraction(b) / _fraction(a))
    return sorted(set(roots))


def fraction_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise types.ParseError(f"'{text}' is not a rational number ({e})")


def poly_coefficients(poly: sympy.Poly) -> Tuple[int, ...]:
    return tuple(int(c) for c in poly.all_coeffs())
