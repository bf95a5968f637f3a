"""Exact isogeny loci: the numerator of Phi_N(J(lambda(t)), J(mu(t)))."""

import logging
from fractions import Fraction
from typing import List, Optional

import sympy  # type: ignore

from isomatrix import isogeny_detect
from isomatrix import types

from . import _rational_map as rm
from . import _scan
from . import _spec

logger = logging.getLogger(__name__)


def isogeny_locus_oracle(
    spec: _spec.CurveSpec,
    N: int,
    phi: Optional[isogeny_detect.ModularPolynomial] = None,
) -> sympy.Poly:
    """Primitive integer polynomial in t vanishing exactly where the fibers are N-isogenous.

    The zero polynomial means the two families are isogenous identically.
    """
    if spec.lambda_map.is_constant or spec.mu_map.is_constant:
        raise types.ValidationError("lambda and mu non-constant", spec.name)
    if phi is None:
        phi = isogeny_detect.modular_polynomial(N)

    jx, jy = rm.j_composed(spec.lambda_map), rm.j_composed(spec.mu_map)
    d = phi.degree
    a, b = jx.numerator, jx.denominator
    c, e = jy.numerator, jy.denominator
    a_pows, b_pows = [a ** k for k in range(d + 1)], [b ** k for k in range(d + 1)]
    c_pows, e_pows = [c ** k for k in range(d + 1)], [e ** k for k in range(d + 1)]

    total = sympy.Poly(0, rm.T, domain=sympy.QQ)
    for ex, ey, coefficient in phi.monomials():
        total += (
            a_pows[ex] * b_pows[d - ex] * c_pows[ey] * e_pows[d - ey] * coefficient
        )
    if total.is_zero:
        logger.warning("%s: fibers are %d-isogenous identically", spec.name, N)
        return rm.integer_coefficients(total)

    poles = b_pows[d] * e_pows[d]
    numerator = total.exquo(sympy.gcd(total, poles))
    return rm.integer_coefficients(numerator)


def oracle_parameters(
    spec: _spec.CurveSpec, N: int, h1_max: int
) -> List[Fraction]:
    """Rational roots of the oracle inside the scan's enumeration range."""
    poly = isogeny_locus_oracle(spec, N)
    if poly.is_zero:
        return list(_scan.enumerate_parameters(h1_max, spec))
    return [
        t
        for t in rm.rational_roots(poly)
        if _scan.h1(t) <= h1_max and spec.fiber(t) is not None
    ]
