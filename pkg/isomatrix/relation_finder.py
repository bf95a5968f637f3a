"""Bounded integer relations among elliptic logarithms, modulo the period lattice.

A relation for logs z_1..z_m on E_tau1 and w_1..w_n on E_tau2 is a pair of integer
vectors (a, b) and integers gamma1, gamma2 with

    sum (a_i + b_i rho) z_i + alpha * sum (a_{m+j} + b_{m+j} rho) w_j = gamma1 + gamma2 tau1

where alpha carries the w-logs into C / (Z + Z tau1).
"""

import concurrent.futures
import dataclasses
import logging
import random
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import mpmath  # type: ignore
from mpmath import mp

from . import _lattice
from . import analytic_kernel as ak
from . import heights
from . import isogeny_detect
from . import legendre_curves as lc
from . import types

logger = logging.getLogger(__name__)

RELATION_MARGIN = 10


@dataclasses.dataclass(frozen=True)
class LogConfiguration:
    tau1: types.PeriodPoint
    z: Tuple[types.EllipticLogarithm, ...]
    tau2: types.PeriodPoint
    w: Tuple[types.EllipticLogarithm, ...] = ()
    # multiplier from C / Lambda_tau2 to C / Lambda_tau1; 1 when n = 0
    alpha: mpmath.mpc = mpmath.mpc(1)
    isogeny: Optional[isogeny_detect.IsogenyWitness] = None

    def __post_init__(self):
        object.__setattr__(self, "z", tuple(self.z))
        object.__setattr__(self, "w", tuple(self.w))
        for log in self.z:
            if log.tau != self.tau1:
                raise types.ValidationError(
                    "z in L_tau1", f"{log.z} lives on {log.tau.tau}"
                )
        for log in self.w:
            if log.tau != self.tau2:
                raise types.ValidationError(
                    "w in L_tau2", f"{log.z} lives on {log.tau.tau}"
                )

    @classmethod
    def from_isogeny(
        cls,
        tau1: types.PeriodPoint,
        z: Sequence[types.EllipticLogarithm],
        tau2: types.PeriodPoint,
        w: Sequence[types.EllipticLogarithm],
        witness: isogeny_detect.IsogenyWitness,
    ) -> "LogConfiguration":
        return cls(tau1, tuple(z), tau2, tuple(w), witness.transport, witness)

    @property
    def m(self) -> int:
        return len(self.z)

    @property
    def n(self) -> int:
        return len(self.w)

    def transported(self) -> List[mpmath.mpc]:
        """z_1..z_m followed by alpha * w_1..w_n, all as logs on E_tau1."""
        alpha = ak.as_mpc(self.alpha)
        return [ak.as_mpc(log.z) for log in self.z] + [
            alpha * ak.as_mpc(log.z) for log in self.w
        ]

    @property
    def matrix_height(self) -> int:
        return 1 if self.isogeny is None else self.isogeny.matrix.height


def gamma_bound_constant(cfg: LogConfiguration, rho=0) -> float:
    """kappa with |gamma1|, |gamma2| <= kappa * T^4 for relations of size T.

    The combination is bounded by T (1 + |rho|) sum |v_k|; solving for the lattice
    coordinates divides by Im(tau1) and costs another factor max(1, |tau1|).
    """
    with mp.workdps(20):
        tau = cfg.tau1.tau
        logs = sum((abs(v) for v in cfg.transported()), mp.mpf(0))
        total = (1 + abs(ak.as_mpc(rho))) * max(1, logs)
        lattice = (1 + max(1, abs(tau))) / min(1, tau.imag)
        return float(total * lattice) + 1.0


@dataclasses.dataclass(frozen=True)
class RelationWitness:
    a: Tuple[int, ...]
    b: Tuple[int, ...]
    gamma1: int
    gamma2: int
    rho: mpmath.mpc
    residual: mpmath.mpf
    T_used: float
    kappa: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if not any(self.a) and not any(self.b):
            raise types.ValidationError("(a, b) != 0")
        if self.size > self.T_used:
            raise types.ValidationError(
                "max(|a_i|, |b_i|) <= T", f"{self.size} > {self.T_used}"
            )
        bound = self.kappa * self.T_used ** 4
        if max(abs(self.gamma1), abs(self.gamma2)) > bound:
            raise types.ValidationError(
                "|gamma1|, |gamma2| <= kappa T^4",
                f"({self.gamma1}, {self.gamma2}) against {bound}",
            )
        if self.residual < 0:
            raise types.ValidationError("residual >= 0")

    @property
    def size(self) -> int:
        return max((abs(c) for c in self.a + self.b), default=0)

    @property
    def coefficients(self) -> Tuple[int, ...]:
        """The a-block followed by the b-block."""
        return self.a + self.b


def _relation_values(cfg: LogConfiguration, rho) -> List[mpmath.mpc]:
    logs = cfg.transported()
    values = list(logs)
    if rho:
        rho = ak.as_mpc(rho)
        values.extend(rho * v for v in logs)
    values.append(mp.mpc(-1))
    values.append(-cfg.tau1.tau)
    return values


def _combination(cfg: LogConfiguration, witness: RelationWitness) -> mpmath.mpc:
    logs = cfg.transported()
    rho = ak.as_mpc(witness.rho)
    total = mp.fsum((a + b * rho) * v for a, b, v in zip(witness.a, witness.b, logs))
    return total - witness.gamma1 - witness.gamma2 * cfg.tau1.tau


def find_relation(
    cfg: LogConfiguration,
    rho=0,
    T: float = 10,
    ctx: types.PrecisionContext = ak.DEFAULT_PRECISION,
) -> Optional[RelationWitness]:
    """The relation of smallest max-coefficient with every coefficient bounded by T."""
    if T < 1:
        raise ValueError(f"T must be at least 1, got {T}")
    k = cfg.m + cfg.n
    if k < 1:
        raise ValueError("at least one logarithm is required")

    with mp.workdps(ctx.working_digits + ak.GUARD_DIGITS):
        values = _relation_values(cfg, rho)
        kappa = gamma_bound_constant(cfg, rho)
        gamma_cap = kappa * T ** 4
        with_rho = len(values) == 2 * k + 2
        best: Optional[Tuple[Tuple, RelationWitness]] = None
        ambiguous = mp.mpf(0)

        for vec in _lattice.candidate_relations(
            values, ctx.working_digits - RELATION_MARGIN
        ):
            a = vec[:k]
            b = vec[k : 2 * k] if with_rho else (0,) * k
            gamma1, gamma2 = vec[-2], vec[-1]
            if not any(a) and not any(b):
                continue
            size = max(abs(c) for c in a + b)
            if size > T or max(abs(gamma1), abs(gamma2)) > gamma_cap:
                continue
            res = _lattice.residual(vec, values)
            if res >= ctx.accept:
                if res <= ctx.reject:
                    ambiguous = max(ambiguous, res)
                continue
            witness = RelationWitness(
                a, b, gamma1, gamma2, ak.as_mpc(rho), res, T, kappa
            )
            key = (size, a + b)
            if best is None or key < best[0]:
                best = (key, witness)

        if best is not None:
            return best[1]
        if ambiguous:
            raise types.PrecisionExhausted(
                f"relation residual {mp.nstr(ambiguous, 5)} is ambiguous"
            )
        return None


def _logs(points: Sequence[lc.CurvePoint], tau, ctx) -> List[types.EllipticLogarithm]:
    # exact coordinates are converted inside elliptic_log, at its precision
    return [ak.elliptic_log(P.coords, P.parent.value, tau, ctx) for P in points]


def _recompute(
    cfg: LogConfiguration,
    points: Sequence[lc.CurvePoint],
    isogeny: Optional[isogeny_detect.IsogenyWitness],
    ctx: types.PrecisionContext,
) -> LogConfiguration:
    """The same configuration with logs recomputed from the points under ctx."""
    p_points, q_points = points[: cfg.m], points[cfg.m :]
    if q_points:
        tau2 = ak.period_from_lambda(q_points[0].parent.value, ctx)
    if p_points:
        tau1 = ak.period_from_lambda(p_points[0].parent.value, ctx)
    elif isogeny is not None:
        with mp.workdps(ctx.working_digits + ak.GUARD_DIGITS):
            tau1 = types.PeriodPoint(isogeny.matrix.act(tau2.tau))
    else:
        tau1 = tau2

    z = _logs(p_points, tau1, ctx)
    if not q_points:
        return LogConfiguration(tau1, tuple(z), tau1)
    w = _logs(q_points, tau2, ctx)
    alpha = ak.as_mpc(cfg.alpha)
    if isogeny is not None:
        with mp.workdps(ctx.working_digits + ak.GUARD_DIGITS):
            alpha = isogeny.A - isogeny.C * tau1.tau
    return LogConfiguration(tau1, tuple(z), tau2, tuple(w), alpha, isogeny)


def _image_point(
    z: mpmath.mpc, cfg: LogConfiguration, parent: lc.LegendreParam, ctx
) -> Optional[lc.CurvePoint]:
    """phi(Q) rounded to a rational point of E_lambda, or None if it is not rational."""
    image = ak.parametrize_point(
        types.EllipticLogarithm(ak.lattice_reduce(z, cfg.tau1), cfg.tau1), ctx
    )
    if image.Z == 0:
        return lc.infinity(parent)
    try:
        x = heights.recognize_coordinate(image.X)
        y = heights.recognize_coordinate(image.Y)
    except types.RecognitionFailed:
        return None
    if not isinstance(x, Fraction) or not isinstance(y, Fraction):
        return None
    return lc.point(x, y, parent)


def _exact_combination(
    cfg: LogConfiguration,
    witness: RelationWitness,
    points: Sequence[lc.CurvePoint],
    ctx: types.PrecisionContext,
) -> Optional[bool]:
    """sum a_i P_i + sum a_{m+j} phi(Q_j) by the group law; None when not decidable."""
    p_points, q_points = list(points[: cfg.m]), points[cfg.m :]
    if not p_points or not all(P.exact for P in points):
        return None
    parent = p_points[0].parent

    images = []
    with mp.workdps(ctx.working_digits + ak.GUARD_DIGITS):
        alpha = ak.as_mpc(cfg.alpha)
        for log in cfg.w:
            try:
                image = _image_point(alpha * ak.as_mpc(log.z), cfg, parent, ctx)
            except types.NotOnCurve:
                return False
            if image is None:
                logger.debug("isogeny image is not rational, exact check skipped")
                return None
            images.append(image)

    total = lc.infinity(parent)
    for coefficient, P in zip(witness.a, p_points + images):
        total = lc.add(total, lc.scalar_mul(coefficient, P))
    return total.is_zero


def certify_relation(
    cfg: LogConfiguration,
    witness: RelationWitness,
    points: Optional[Sequence[lc.CurvePoint]] = None,
    isogeny: Optional[isogeny_detect.IsogenyWitness] = None,
    ctx: types.PrecisionContext = ak.DEFAULT_PRECISION,
) -> bool:
    """Re-check a relation at the certify precision.

    With points the logs are recomputed from them and the combination is measured
    modulo the lattice. Otherwise the stored logs are used as they are, so they
    must carry certify-precision digits. For rational points with rho = 0 the
    group law confirms the relation exactly as well.
    """
    certify = ctx.certifying()
    try:
        if points:
            cfg = _recompute(cfg, points, isogeny or cfg.isogeny, certify)
        with mp.workdps(certify.working_digits + ak.GUARD_DIGITS):
            if points:
                residual = ak.lattice_distance(
                    _combination(cfg, witness), 0, cfg.tau1, certify
                )
            else:
                residual = abs(_combination(cfg, witness))
            if residual > ctx.certify_tolerance:
                logger.debug(
                    "relation %s rejected, residual %s", witness.a, mp.nstr(residual, 5)
                )
                return False
    except types.PrecisionExhausted as e:
        logger.debug("certification failed: %s", e)
        return False

    if points and not witness.rho and not any(witness.b):
        exact = _exact_combination(cfg, witness, points, certify)
        if exact is not None:
            return exact
    return True


PLANTED_COEFFICIENT_BOUND = 3


def _uniform(rng: random.Random, bits: int) -> mpmath.mpf:
    return mp.mpf(rng.getrandbits(bits)) / 2 ** bits


def synthetic_samples(
    count: int,
    points: int = 2,
    planted: int = 0,
    seed: int = 0,
    ctx: types.PrecisionContext = ak.DEFAULT_PRECISION,
) -> List[LogConfiguration]:
    """Random log configurations on random period points, at certify precision.

    The first `planted` samples have their last log set to a small integer
    combination of the others, reduced mod the lattice, so each carries a relation
    of size at most PLANTED_COEFFICIENT_BOUND. A single planted log is 6-torsion.
    """
    if points < 1 or not 0 <= planted <= count:
        raise ValueError(
            f"need points >= 1 and 0 <= planted <= count, got {points}, {planted}"
        )
    rng = random.Random(seed)
    digits = ctx.certify_digits + ak.GUARD_DIGITS
    bits = int(digits * 3.33) + 8
    samples = []
    with mp.workdps(digits):
        for k in range(count):
            x = _uniform(rng, bits) - mp.mpf(1) / 2
            y = mp.sqrt(1 - x ** 2) + _uniform(rng, bits)
            tau = types.PeriodPoint(mp.mpc(x, y))
            zs = [
                _uniform(rng, bits) + _uniform(rng, bits) * tau.tau
                for _ in range(points)
            ]
            if k < planted and points > 1:
                bound = PLANTED_COEFFICIENT_BOUND
                coefficients = [rng.randint(-bound, bound) for _ in range(points - 1)]
                if not any(coefficients):
                    coefficients[0] = 1
                planted_z = mp.fsum(c * z for c, z in zip(coefficients, zs))
                zs[-1] = ak.lattice_reduce(planted_z, tau)
            elif k < planted:
                zs[-1] = ak.lattice_reduce(mp.mpf(rng.randint(1, 5)) / 6, tau)
            logs = tuple(types.EllipticLogarithm(z, tau) for z in zs)
            samples.append(LogConfiguration(tau, logs, tau))
    return samples


def _sample_hit_size(
    cfg: LogConfiguration, rho, T: float, ctx: types.PrecisionContext
) -> Optional[float]:
    """Smallest T at which the sample enters Z(T), or None."""
    try:
        witness = find_relation(cfg, rho, T, ctx)
    except types.PrecisionExhausted as e:
        logger.debug("sample skipped: %s", e)
        return None
    if witness is None or not certify_relation(cfg, witness, None, cfg.isogeny, ctx):
        return None
    return max(witness.size, cfg.matrix_height)


def count_ZT_hits(
    samples: Sequence[LogConfiguration],
    rho=0,
    T_grid: Sequence[float] = (10, 100, 1000),
    ctx: types.PrecisionContext = ak.DEFAULT_PRECISION,
    threads: int = 1,
) -> List[Tuple[float, int]]:
    """For each T, the number of samples carrying a certified relation of size <= T."""
    grid = list(T_grid)
    if any(t < 1 for t in grid) or grid != sorted(grid):
        raise ValueError(f"T_grid must be ascending and >= 1, got {grid}")
    if not grid or not samples:
        return [(t, 0) for t in grid]

    top = grid[-1]
    if threads > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as pool:
            sizes = list(
                pool.map(
                    _sample_hit_size,
                    samples,
                    [rho] * len(samples),
                    [top] * len(samples),
                    [ctx] * len(samples),
                )
            )
    else:
        sizes = [_sample_hit_size(cfg, rho, top, ctx) for cfg in samples]

    hits = [s for s in sizes if s is not None]
    logger.info("%d of %d samples carry a relation", len(hits), len(samples))
    return [(t, sum(1 for s in hits if s <= t)) for t in grid]
