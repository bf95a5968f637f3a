"""Checks of the hypotheses a scan relies on: asymmetry and genericity."""

import dataclasses
import logging
import math
import random
from fractions import Fraction
from typing import List, NamedTuple, Optional

import sympy  # type: ignore
from mpmath import mp

from isomatrix import analytic_kernel as ak
from isomatrix import isogeny_detect
from isomatrix import legendre_curves as lc
from isomatrix import relation_finder as rf
from isomatrix import types

from . import _rational_map as rm
from . import _spec

logger = logging.getLogger(__name__)

FIBER_SAMPLES = 3
GENERICITY_SAMPLES = 3


class AsymmetryReport(NamedTuple):
    degX: int
    degY: int
    asymmetric: bool
    # degree of the parametrization onto its image curve
    fibration: int = 1


def _fiber_polynomial(f: rm.RationalMap, t0: Fraction) -> sympy.Poly:
    """num(t) den(t0) - den(t) num(t0), whose roots are the fiber of f through t0."""
    value = f(t0)
    assert value is not None
    return f.numerator * value.denominator - f.denominator * value.numerator


def fibration_degree(
    jx: rm.RationalMap, jy: rm.RationalMap, seed: int = 0
) -> int:
    """Generic size of the fibers of t -> (jx(t), jy(t)), by gcd of specialized counts."""
    rng = random.Random(seed)
    counts: List[int] = []
    while len(counts) < FIBER_SAMPLES:
        t0 = _spec.random_rational(rng, _spec.SECTION_CHECK_HEIGHT)
        if jx(t0) is None or jy(t0) is None:
            continue
        common = sympy.gcd(_fiber_polynomial(jx, t0), _fiber_polynomial(jy, t0))
        counts.append(max(common.degree(), 1))
    return math.gcd(*counts)


def asymmetry_check(spec: _spec.CurveSpec, seed: int = 0) -> AsymmetryReport:
    """Degrees of the two j-coordinates restricted to the image curve."""
    if spec.lambda_map.is_constant and spec.mu_map.is_constant:
        raise types.ConstantMapDegenerate(f"{spec.name}: lambda and mu are constant")
    jx, jy = rm.j_composed(spec.lambda_map), rm.j_composed(spec.mu_map)
    deg_x, deg_y = jx.degree, jy.degree
    d = fibration_degree(jx, jy, seed) if deg_x and deg_y else 1
    if d > 1:
        logger.debug("%s: parametrization has degree %d onto its image", spec.name, d)
        deg_x, deg_y = deg_x // d, deg_y // d
    return AsymmetryReport(deg_x, deg_y, deg_x != deg_y, d)


@dataclasses.dataclass(frozen=True)
class SampleCheck:
    t: Fraction
    isogeny_absent: bool
    p_relation_absent: bool
    q_relation_absent: bool
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.isogeny_absent and self.p_relation_absent and self.q_relation_absent


@dataclasses.dataclass(frozen=True)
class GenericityReport:
    samples: List[SampleCheck]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.samples)

    def lines(self) -> List[str]:
        return [
            f"t = {rm.fraction_text(s.t)}: isogeny "
            f"{'absent' if s.isogeny_absent else 'FOUND'}, P-relation "
            f"{'absent' if s.p_relation_absent else 'FOUND'}, Q-relation "
            f"{'absent' if s.q_relation_absent else 'FOUND'}"
            + (f" ({s.detail})" if s.detail else "")
            for s in self.samples
        ]


def _relation_among(
    sections, t: Fraction, value: Fraction, config: _spec.ScanConfig
) -> Optional[rf.RelationWitness]:
    if not sections:
        return None
    ctx = config.precision
    parent = lc.LegendreParam(value)
    tau = config.period(value)
    with mp.workdps(ctx.working_digits + ak.GUARD_DIGITS):
        points = [s.point(t, parent) for s in sections]
    logs = [ak.elliptic_log(P.coords, value, tau, ctx) for P in points]
    cfg = rf.LogConfiguration(tau, tuple(logs), tau)
    return rf.find_relation(cfg, 0, config.t_relation, ctx)


def genericity_check(
    spec: _spec.CurveSpec, config: _spec.ScanConfig, seed: int = 0
) -> GenericityReport:
    """Isogenies and relations that hold at random fibers hold generically."""
    ctx = config.precision
    samples = []
    for t in _spec.generic_parameters(spec, GENERICITY_SAMPLES, seed):
        lam, mu = spec.fiber(t)  # type: ignore
        tau1 = config.period(lam)
        tau2 = config.period(mu)
        witness = isogeny_detect.find_isogeny_matrix(tau1, tau2, config.n_max, ctx)
        p_rel = _relation_among(spec.p_sections, t, lam, config)
        q_rel = _relation_among(spec.q_sections, t, mu, config)

        details = []
        if witness is not None:
            details.append(f"isogeny of degree {witness.N}")
        if p_rel is not None:
            details.append(f"P-relation a = {p_rel.a}")
        if q_rel is not None:
            details.append(f"Q-relation a = {q_rel.a}")
        samples.append(
            SampleCheck(
                t, witness is None, p_rel is None, q_rel is None, "; ".join(details)
            )
        )
    return GenericityReport(samples)
