"""Scan of rational parameters for points where an isogeny and a relation coexist."""

import concurrent.futures
import dataclasses
import functools
import logging
import math
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import mpmath  # type: ignore
from mpmath import mp

from isomatrix import analytic_kernel as ak
from isomatrix import heights
from isomatrix import isogeny_detect
from isomatrix import legendre_curves as lc
from isomatrix import relation_finder as rf
from isomatrix import types

from . import _hypotheses
from . import _spec

logger = logging.getLogger(__name__)


def h1(t: Fraction) -> int:
    return max(abs(t.numerator), t.denominator)


def enumerate_parameters(
    h1_max: int, spec: Optional[_spec.CurveSpec] = None
) -> Iterator[Fraction]:
    """Every p/q with max(|p|, |q|) <= h1_max once, by H1 and then numerator.

    With a spec, parameters whose fiber is degenerate or at a pole are left out.
    """
    for height in range(1, h1_max + 1):
        level = []
        for q in range(1, height + 1):
            for p in range(-height, height + 1):
                if max(abs(p), q) == height and math.gcd(p, q) == 1:
                    level.append(Fraction(p, q))
        for t in sorted(level, key=lambda x: (x.numerator, x.denominator)):
            if spec is None or spec.fiber(t) is not None:
                yield t


@dataclasses.dataclass(frozen=True)
class FindingHeights:
    h_lambda: float
    h_mu: float
    # canonical heights of the sections, None where the coordinates blew up
    neron_tate: Tuple[Optional[float], ...]


@dataclasses.dataclass(frozen=True)
class Finding:
    t0: Fraction
    lambda0: Fraction
    mu0: Fraction
    isogeny: isogeny_detect.IsogenyWitness
    relation: rf.RelationWitness
    heights: FindingHeights
    certified: bool
    levels: Tuple[int, ...] = ()
    tau1: mpmath.mpc = mpmath.mpc(0, 1)
    cm_discriminant: Optional[int] = None

    def __post_init__(self):
        if not self.certified:
            raise types.ValidationError("certified findings only", str(self.t0))
        if self.lambda0 in (0, 1) or self.mu0 in (0, 1):
            raise types.ValidationError("lambda0, mu0 not in {0, 1}", str(self.t0))

    @property
    def sort_key(self) -> Tuple[int, Fraction]:
        return h1(self.t0), self.t0


@dataclasses.dataclass(frozen=True)
class SkipEntry:
    t0: Fraction
    levels: Tuple[int, ...]
    reason: str


@dataclasses.dataclass(frozen=True)
class PointOutcome:
    t0: Fraction
    levels: Tuple[int, ...] = ()
    finding: Optional[Finding] = None
    skip: Optional[SkipEntry] = None


@dataclasses.dataclass
class ScanResult:
    findings: List[Finding]
    skipped: List[SkipEntry]
    # level N -> parameters where Phi_N(J(mu), J(lambda)) = 0
    hits: Dict[int, List[Fraction]]
    asymmetry: _hypotheses.AsymmetryReport
    override_asymmetry: bool = False
    scanned: int = 0


def _section_heights(
    sections: Sequence[_spec.Section], t0: Fraction, value: Fraction
) -> List[Optional[float]]:
    out: List[Optional[float]] = []
    for section in sections:
        x = section.x(t0)
        if x is None:
            out.append(0.0)
            continue
        try:
            out.append(heights.neron_tate_x(x, value).value)
        except types.CoordinateBlowup:
            out.append(None)
    return out


def _examine(
    spec: _spec.CurveSpec,
    config: _spec.ScanConfig,
    constant_cm: bool,
    t0: Fraction,
    levels: Tuple[int, ...],
    ctx: types.PrecisionContext,
) -> Optional[Finding]:
    lam0, mu0 = spec.fiber(t0)  # type: ignore
    tau1 = config.period(lam0, ctx)
    tau2 = config.period(mu0, ctx)
    witness = isogeny_detect.find_isogeny_matrix(tau1, tau2, config.n_max, ctx)
    if witness is None:
        raise types.PrecisionExhausted(f"no period matrix for levels {levels}")

    # numeric sections carry certify digits so certification can reuse them
    certify = ctx.certifying()
    with mp.workdps(certify.working_digits + ak.GUARD_DIGITS):
        p_points = [s.point(t0, lc.LegendreParam(lam0)) for s in spec.p_sections]
        q_points = [s.point(t0, lc.LegendreParam(mu0)) for s in spec.q_sections]
    if not p_points and not q_points:
        return None

    z = [ak.elliptic_log(P.coords, lam0, tau1, ctx) for P in p_points]
    w = [ak.elliptic_log(Q.coords, mu0, tau2, ctx) for Q in q_points]
    cfg = rf.LogConfiguration.from_isogeny(tau1, z, tau2, w, witness)

    rho = 0
    cm = isogeny_detect.detect_cm(tau1, ctx=ctx) if constant_cm else None
    if cm is not None:
        rho = cm.rho0

    relation = rf.find_relation(cfg, rho, config.t_relation, ctx)
    if relation is None:
        return None
    if not rf.certify_relation(cfg, relation, p_points + q_points, witness, ctx):
        logger.debug("t0 = %s: relation %s failed certification", t0, relation.a)
        return None

    return Finding(
        t0=t0,
        lambda0=lam0,
        mu0=mu0,
        isogeny=witness,
        relation=relation,
        heights=FindingHeights(
            heights.weil_height_rational(lam0).value,
            heights.weil_height_rational(mu0).value,
            tuple(
                _section_heights(spec.p_sections, t0, lam0)
                + _section_heights(spec.q_sections, t0, mu0)
            ),
        ),
        certified=True,
        levels=levels,
        tau1=tau1.tau,
        cm_discriminant=None if cm is None else cm.Delta,
    )


def _scan_point(
    spec: _spec.CurveSpec, config: _spec.ScanConfig, constant_cm: bool, t0: Fraction
) -> PointOutcome:
    lam0, mu0 = spec.fiber(t0)  # type: ignore
    j1, j2 = lc.j_invariant(lam0), lc.j_invariant(mu0)
    levels = tuple(
        N
        for N in range(1, config.n_max + 1)
        if isogeny_detect.is_cyclic_isogenous(j2, j1, N)
    )
    if not levels:
        return PointOutcome(t0)

    ctx = config.precision
    try:
        try:
            finding = _examine(spec, config, constant_cm, t0, levels, ctx)
        except types.PrecisionExhausted as e:
            logger.debug("t0 = %s: %s, retrying at higher precision", t0, e)
            finding = _examine(spec, config, constant_cm, t0, levels, ctx.escalated())
    except types.IsomatrixError as e:
        return PointOutcome(t0, levels, skip=SkipEntry(t0, levels, str(e)))
    return PointOutcome(t0, levels, finding=finding)


def _install_polynomials(polynomials: Sequence[isogeny_detect.ModularPolynomial]):
    for poly in polynomials:
        isogeny_detect.install_modular_polynomial(poly)


def _constant_side_has_cm(spec: _spec.CurveSpec, config: _spec.ScanConfig) -> bool:
    ctx = config.precision
    for f in (spec.mu_map, spec.lambda_map):
        if f.is_constant:
            value = f(0)
            tau = config.period(value)
            reduced, _ = ak.reduce_to_fundamental(tau.tau)
            return isogeny_detect.detect_cm(reduced, ctx=ctx) is not None
    return False


def scan(
    spec: _spec.CurveSpec,
    config: _spec.ScanConfig,
    threads: int = 1,
    override_asymmetry: bool = False,
    seed: int = 0,
    check_genericity: bool = True,
) -> ScanResult:
    """Certified findings over all parameters of height at most config.h1_max."""
    asymmetry = _hypotheses.asymmetry_check(spec, seed)
    if not asymmetry.asymmetric and not override_asymmetry:
        raise types.HypothesisViolation(
            f"{spec.name}: deg X = {asymmetry.degX} equals deg Y = {asymmetry.degY}"
        )
    if check_genericity:
        report = _hypotheses.genericity_check(spec, config, seed)
        if not report.passed:
            raise types.HypothesisViolation(
                f"{spec.name}: not generic; " + " | ".join(report.lines())
            )

    polynomials = [
        isogeny_detect.modular_polynomial(N) for N in range(1, config.n_max + 1)
    ]
    constant_cm = _constant_side_has_cm(spec, config)
    parameters = list(enumerate_parameters(config.h1_max, spec))
    worker = functools.partial(_scan_point, spec, config, constant_cm)

    if threads > 1 and parameters:
        with concurrent.futures.ProcessPoolExecutor(
            max_workers=threads,
            initializer=_install_polynomials,
            initargs=(polynomials,),
        ) as pool:
            outcomes = list(pool.map(worker, parameters, chunksize=8))
    else:
        outcomes = [worker(t) for t in parameters]

    hits: Dict[int, List[Fraction]] = {N: [] for N in range(1, config.n_max + 1)}
    findings, skipped = [], []
    for outcome in outcomes:
        for N in outcome.levels:
            hits[N].append(outcome.t0)
        if outcome.finding is not None:
            findings.append(outcome.finding)
        if outcome.skip is not None:
            logger.debug("skipped t0 = %s: %s", outcome.t0, outcome.skip.reason)
            skipped.append(outcome.skip)

    findings.sort(key=lambda f: f.sort_key)
    logger.info(
        "%s: %d parameters, %d isogeny hits, %d findings, %d skipped",
        spec.name,
        len(parameters),
        sum(1 for o in outcomes if o.levels),
        len(findings),
        len(skipped),
    )
    return ScanResult(
        findings=findings,
        skipped=skipped,
        hits={N: sorted(ts) for N, ts in hits.items()},
        asymmetry=asymmetry,
        override_asymmetry=override_asymmetry,
        scanned=len(parameters),
    )
