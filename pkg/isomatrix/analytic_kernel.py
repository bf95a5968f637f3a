"""High-precision periods, Weierstrass functions and the Legendre uniformization.

Every function runs at the working precision of the PrecisionContext it is given
(plus GUARD_DIGITS) by entering ``mp.workdps``; values returned are plain mpmath
numbers and may be passed between processes.
"""

import fractions
import functools
import logging
from typing import Dict, List, Tuple

import mpmath  # type: ignore
import sympy  # type: ignore
from mpmath import mp

from . import types

logger = logging.getLogger(__name__)

GUARD_DIGITS = 10
DEGENERATE_RADIUS = mpmath.mpf("1e-6")
LAMBDA_CAP = mpmath.mpf(10) ** 6
MIN_Q_SERIES_IM = mpmath.mpf("0.1")
MIN_Q_SERIES_TERMS = 20
MAX_Q_SERIES_TERMS = 4000

DEFAULT_PRECISION = types.PrecisionContext()

# coset representatives of SL2(Z)/Gamma(2): I, S, T, ST, TS, STS
COSETS = (
    types.Matrix2(1, 0, 0, 1),
    types.Matrix2(0, -1, 1, 0),
    types.Matrix2(1, 1, 0, 1),
    types.Matrix2(0, -1, 1, 1),
    types.Matrix2(1, -1, 1, 0),
    types.Matrix2(-1, 0, 1, -1),
)

_MAX_REDUCTION_STEPS = 10000
_SEED_GRID = 8
_SEED_DPS = 20


def as_mpc(value) -> mpmath.mpc:
    """Convert exact rationals and ordinary numbers to an mpmath complex."""
    if isinstance(value, fractions.Fraction):
        return mp.mpc(mp.mpf(value.numerator) / value.denominator)
    return mp.mpc(value)


def coset_action(k: int, lam):
    """Image of the Legendre parameter under the k-th coset representative.

    L(COSETS[k] * tau) == coset_action(k, L(tau)).
    """
    return (
        lam,
        1 - lam,
        1 / lam,
        1 - 1 / lam,
        1 / (1 - lam),
        lam / (lam - 1),
    )[k]


def reduce_to_fundamental(tau_raw) -> Tuple[types.PeriodPoint, types.Matrix2]:
    """Move tau into the standard fundamental domain.

    Returns the reduced point and the matrix gamma in SL2(Z) with gamma * tau_raw
    equal to it. The left boundary Re = -1/2 is kept, the right one is mapped to it.
    """
    tau = as_mpc(tau_raw)
    if tau.imag <= 0:
        raise ValueError(f"tau must lie in the upper half-plane, got {tau}")

    eps = mp.mpf(10) ** (-(mp.dps // 2))
    half = mp.mpf(1) / 2
    a, b, c, d = 1, 0, 0, 1
    for _ in range(_MAX_REDUCTION_STEPS):
        n = int(mp.floor(tau.real + half + eps))
        if n:
            tau -= n
            a, b = a - n * c, b - n * d
        if abs(tau) < 1 - eps:
            tau = -1 / tau
            a, b, c, d = -c, -d, a, b
        else:
            break
    else:
        raise types.PrecisionExhausted(f"reduction of {tau_raw} did not terminate")

    if c < 0 or (c == 0 and d < 0):
        a, b, c, d = -a, -b, -c, -d

    return (
        types.PeriodPoint(tau, types.DomainTag.STANDARD),
        types.Matrix2(a, b, c, d),
    )


class _LatticeFrame:
    """Theta data of the reduced lattice together with the map back to tau.

    Lambda_tau = s^-1 * Lambda_r where r is the reduced point and s the automorphy
    factor, so p(z; tau) = s^2 p(s z; r).
    """

    def __init__(self, tau: mpmath.mpc):
        reduced, gamma = reduce_to_fundamental(tau)
        back = gamma.inverse()
        self.tau = tau
        self.r = reduced.tau
        self.s = back.automorphy(self.r)
        q = mp.expjpi(self.r)
        self.q = q
        self.t2, self.t3, self.t4 = (mp.jtheta(n, 0, q) for n in (2, 3, 4))

        k = mp.pi ** 2 / 3
        t2q, t3q, t4q = self.t2 ** 4, self.t3 ** 4, self.t4 ** 4
        table: Dict[Tuple[int, int], mpmath.mpc] = {
            (1, 0): k * (t3q + t4q),
            (1, 1): k * (t2q - t4q),
            (0, 1): -k * (t2q + t3q),
        }
        self.e1r = table[(1, 0)]

        # half periods of Lambda_tau, scaled into Lambda_r, classified mod 2
        cls1 = (back.d % 2, back.c % 2)
        cls2 = ((back.b + back.d) % 2, (back.a + back.c) % 2)
        cls3 = (back.b % 2, back.a % 2)
        s2 = self.s ** 2
        self.e1, self.e2, self.e3 = (s2 * table[c] for c in (cls1, cls2, cls3))

        # square roots of the pairwise differences, read off the theta constants
        pi = mp.pi
        roots = {
            ((0, 1), (1, 0)): 1j * pi * self.t3 ** 2,
            ((1, 0), (0, 1)): pi * self.t3 ** 2,
            ((1, 1), (1, 0)): 1j * pi * self.t4 ** 2,
            ((1, 0), (1, 1)): pi * self.t4 ** 2,
            ((0, 1), (1, 1)): 1j * pi * self.t2 ** 2,
            ((1, 1), (0, 1)): pi * self.t2 ** 2,
        }
        self.root31 = self.s * roots[(cls3, cls1)]
        self.d31 = self.e3 - self.e1

    def reduced_p(self, w: mpmath.mpc) -> Tuple[mpmath.mpc, mpmath.mpc]:
        """p and p' of Lambda_r at w, w already reduced into L_r."""
        pi = mp.pi
        u = pi * w
        th1 = mp.jtheta(1, u, self.q)
        th2 = mp.jtheta(2, u, self.q)
        dth1 = mp.jtheta(1, u, self.q, 1)
        dth2 = mp.jtheta(2, u, self.q, 1)
        c = pi * self.t3 * self.t4
        f = th2 / th1
        df = pi * (dth2 * th1 - th2 * dth1) / th1 ** 2
        return self.e1r + (c * f) ** 2, 2 * c ** 2 * f * df

    def p(self, z: mpmath.mpc) -> Tuple[mpmath.mpc, mpmath.mpc]:
        w = _reduce_mod(self.s * z, self.r)
        p, dp = self.reduced_p(w)
        return self.s ** 2 * p, self.s ** 3 * dp

    def lattice_distance(self, z: mpmath.mpc) -> mpmath.mpf:
        w = _reduce_mod(self.s * z, self.r)
        best = min(
            abs(w - (m + n * self.r)) for m in (-1, 0, 1, 2) for n in (-1, 0, 1, 2)
        )
        return best / abs(self.s)

    @property
    def legendre(self) -> mpmath.mpc:
        return (self.e2 - self.e1) / self.d31


@functools.lru_cache(maxsize=512)
def _frame(tau: mpmath.mpc, dps: int) -> _LatticeFrame:
    with mp.workdps(dps):
        return _LatticeFrame(tau)


def _reduce_mod(z: mpmath.mpc, tau: mpmath.mpc) -> mpmath.mpc:
    y = mp.floor(z.imag / tau.imag)
    z = z - y * tau
    return z - mp.floor(z.real)


def _working(ctx: types.PrecisionContext) -> int:
    return ctx.working_digits + GUARD_DIGITS


def lattice_reduce(z, tau: types.PeriodPoint) -> mpmath.mpc:
    """Representative of z modulo Z + Z*tau in the parallelogram L_tau."""
    return _reduce_mod(as_mpc(z), tau.tau)


def lattice_distance(
    z1, z2, tau: types.PeriodPoint, ctx: types.PrecisionContext = DEFAULT_PRECISION
) -> mpmath.mpf:
    """Distance between z1 and z2 measured on C / Lambda_tau."""
    dps = _working(ctx)
    with mp.workdps(dps):
        return _frame(tau.tau, dps).lattice_distance(as_mpc(z1) - as_mpc(z2))


def half_periods(
    tau: types.PeriodPoint, ctx: types.PrecisionContext = DEFAULT_PRECISION
) -> types.HalfPeriodValues:
    """e1 = p(1/2), e2 = p((1+tau)/2), e3 = p(tau/2)."""
    dps = _working(ctx)
    with mp.workdps(dps):
        frame = _frame(tau.tau, dps)
        values = types.HalfPeriodValues(frame.e1, frame.e2, frame.e3, frame.root31)
        scale = max(abs(values.e1), abs(values.e2), abs(values.e3))
        if abs(values.e1 + values.e2 + values.e3) > ctx.tolerance * scale:
            raise types.PrecisionExhausted(
                f"half periods at {tau.tau} do not sum to zero"
            )
        return values


def weierstrass_invariants(
    tau: types.PeriodPoint, ctx: types.PrecisionContext = DEFAULT_PRECISION
) -> Tuple[mpmath.mpc, mpmath.mpc]:
    """g2 and g3 of the lattice Z + Z*tau, at the working precision of ctx."""
    with mp.workdps(_working(ctx)):
        hp = half_periods(tau, ctx)
        return hp.g2, hp.g3


def j_invariant_analytic(
    tau: types.PeriodPoint, ctx: types.PrecisionContext = DEFAULT_PRECISION
) -> mpmath.mpc:
    """j(tau) = 1728 g2^3 / (g2^3 - 27 g3^2)."""
    with mp.workdps(_working(ctx)):
        g2, g3 = weierstrass_invariants(tau, ctx)
        g2c = g2 ** 3
        return 1728 * g2c / (g2c - 27 * g3 ** 2)


def weierstrass_p(
    z, tau: types.PeriodPoint, ctx: types.PrecisionContext = DEFAULT_PRECISION
) -> Tuple[mpmath.mpc, mpmath.mpc]:
    """Values of p(z) and p'(z) for the lattice Z + Z*tau."""
    dps = _working(ctx)
    with mp.workdps(dps):
        frame = _frame(tau.tau, dps)
        z = as_mpc(z)
        pole_radius = mp.mpf(10) ** (-(ctx.working_digits / 4))
        if frame.lattice_distance(z) < pole_radius:
            raise types.PoleAtLatticePoint(f"z = {z} lies on the lattice of {tau.tau}")
        return frame.p(z)


def legendre_lambda(
    tau: types.PeriodPoint, ctx: types.PrecisionContext = DEFAULT_PRECISION
) -> mpmath.mpc:
    """L(tau) = (e2 - e1) / (e3 - e1)."""
    dps = _working(ctx)
    with mp.workdps(dps):
        return _frame(tau.tau, dps).legendre


def parametrize_point(
    z: types.EllipticLogarithm, ctx: types.PrecisionContext = DEFAULT_PRECISION
) -> types.ProjectiveTriple:
    """The point [xi : eta : 1] on the Legendre curve of tau, or [0 : 1 : 0]."""
    dps = _working(ctx)
    with mp.workdps(dps):
        frame = _frame(z.tau.tau, dps)
        value = as_mpc(z.z)
        pole_radius = mp.mpf(10) ** (-(ctx.working_digits / 4))
        if frame.lattice_distance(value) < pole_radius:
            return types.ProjectiveTriple(mp.mpc(0), mp.mpc(1), mp.mpc(0))
        p, dp = frame.p(value)
        xi = (p - frame.e1) / frame.d31
        eta = dp / (2 * frame.root31 ** 3)
        return types.ProjectiveTriple(xi, eta, mp.mpc(1))


def _agm(a: mpmath.mpc, b: mpmath.mpc) -> mpmath.mpc:
    """Arithmetic-geometric mean, always taking the root closer to the new mean."""
    tol = mp.mpf(10) ** (-(mp.dps - 3))
    for _ in range(4 * mp.dps):
        if abs(a - b) <= tol * abs(a):
            return a
        a, b = (a + b) / 2, mp.sqrt(a * b)
        if abs(a - b) > abs(a + b):
            b = -b
    raise types.PrecisionExhausted("AGM did not converge")


def period_from_lambda(
    lam,
    ctx: types.PrecisionContext = DEFAULT_PRECISION,
    exclusion_radius=DEGENERATE_RADIUS,
    cap=LAMBDA_CAP,
) -> types.PeriodPoint:
    """A period tau with L(tau) = lam.

    tau is reduced into the standard domain and then moved by one of the six coset
    representatives; the coset index is recorded on the returned point.
    """
    dps = _working(ctx)
    with mp.workdps(dps):
        lam = as_mpc(lam)
        if (
            lam == 0
            or lam == 1
            or abs(lam) < exclusion_radius
            or abs(lam - 1) < exclusion_radius
            or abs(lam) > cap
        ):
            raise types.DegenerateLambda(f"lambda = {lam} is degenerate")

        seed = min(
            (coset_action(k, lam) for k in range(6)), key=lambda v: abs(v - 0.5)
        )
        one = mp.mpc(1)
        tau0 = 1j * _agm(one, mp.sqrt(seed)) / _agm(one, mp.sqrt(1 - seed))
        if tau0.imag <= 0:
            raise types.PrecisionExhausted(f"AGM seed for {lam} left H")
        reduced, _ = reduce_to_fundamental(tau0)
        r = reduced.tau
        r_lambda = _frame(r, dps).legendre
        coset = min(range(6), key=lambda k: abs(coset_action(k, r_lambda) - lam))
        tau = COSETS[coset].act(r)

        tol = ctx.tolerance * abs(lam) / 100
        for _ in range(12):
            frame = _frame(tau, dps)
            value = frame.legendre
            err = value - lam
            if abs(err) <= tol:
                break
            slope = 1j * value * (1 - value) * frame.d31 / mp.pi
            tau = tau - err / slope
        else:
            raise types.PrecisionExhausted(f"Newton refinement for {lam} stalled")

        tag = types.DomainTag.STANDARD if coset == 0 else types.DomainTag.SIXFOLD
        return types.PeriodPoint(tau, tag, coset)


def elliptic_log(
    point,
    lam,
    tau: types.PeriodPoint,
    ctx: types.PrecisionContext = DEFAULT_PRECISION,
) -> types.EllipticLogarithm:
    """The z in L_tau with parametrize_point(z) equal to the given point."""
    dps = _working(ctx)
    with mp.workdps(dps):
        X, Y, Z = (as_mpc(v) for v in point)
        lam = as_mpc(lam)
        if abs(Z) <= ctx.tolerance * max(abs(X), abs(Y), 1):
            return types.EllipticLogarithm(mp.mpc(0), tau)

        xi, eta = X / Z, Y / Z
        residual = eta ** 2 - xi * (xi - 1) * (xi - lam)
        if abs(residual) > ctx.tolerance * max(1, abs(xi)) ** 3:
            raise types.NotOnCurve(f"({xi}, {eta}) is not on E_{lam}")

        frame = _frame(tau.tau, dps)
        if abs(eta) <= ctx.accept:
            halves = (
                (mp.mpc(0), 1 / mp.mpf(2)),
                (mp.mpc(1), tau.tau / 2),
                (lam, (1 + tau.tau) / 2),
            )
            _, z = min(halves, key=lambda h: abs(h[0] - xi))
            return types.EllipticLogarithm(lattice_reduce(z, tau), tau)

        target_p = frame.e1 + frame.d31 * xi
        target_dp = 2 * frame.root31 ** 3 * eta

        for seed in _log_seeds(tau.tau, target_p):
            z = _newton_p(tau.tau, seed, target_p, _SEED_DPS, 40)
            if z is None:
                continue
            with mp.workdps(_SEED_DPS):
                _, dp = _frame(tau.tau, _SEED_DPS).p(z)
                if abs(dp + target_dp) < abs(dp - target_dp):
                    z = -z
            z = _newton_p(tau.tau, z, target_p, dps, 16)
            if z is None:
                continue
            p, dp = frame.p(z)
            scale = max(1, abs(target_p))
            if abs(p - target_p) <= ctx.tolerance * scale and abs(
                dp - target_dp
            ) <= mp.sqrt(ctx.tolerance) * max(1, abs(target_dp)):
                return types.EllipticLogarithm(lattice_reduce(z, tau), tau)

        raise types.PrecisionExhausted(f"no elliptic logarithm found for ({xi}, {eta})")


def _log_seeds(tau: mpmath.mpc, target_p: mpmath.mpc) -> List[mpmath.mpc]:
    """Starting points for Newton, best first, computed at low precision."""
    with mp.workdps(_SEED_DPS):
        frame = _frame(tau, _SEED_DPS)
        target = mp.mpc(target_p)
        grid: List[Tuple[mpmath.mpf, mpmath.mpc]] = []
        for i in range(_SEED_GRID):
            for j in range(_SEED_GRID):
                z = (i + mp.mpf(1) / 2 + (j + mp.mpf(1) / 2) * tau) / _SEED_GRID
                p, _ = frame.p(z)
                grid.append((abs(p - target), z))
        grid.sort(key=lambda item: item[0])
        seeds = [z for _, z in grid[:12]]
        if abs(target) > 1:
            # large p means the point sits near the origin, where p ~ 1/z^2
            seeds.insert(0, 1 / mp.sqrt(target))
        return seeds


def _newton_p(
    tau: mpmath.mpc, z: mpmath.mpc, target_p: mpmath.mpc, dps: int, steps: int
):
    """Solve p(z) = target by Newton's method at the given precision, or None."""
    with mp.workdps(dps):
        frame = _frame(tau, dps)
        z = mp.mpc(z)
        target = mp.mpc(target_p)
        tol = mp.mpf(10) ** (-(dps - 5))
        for _ in range(steps):
            if frame.lattice_distance(z) < tol:
                return None
            p, dp = frame.p(z)
            if dp == 0:
                return None
            step = (p - target) / dp
            z = z - step
            if abs(step) <= tol * max(1, abs(z)):
                return z
        return None


def _sigma3(n: int) -> int:
    return int(sympy.divisor_sigma(n, 3))


def _series_mul(f: List[int], g: List[int], size: int) -> List[int]:
    out = [0] * size
    for i, fi in enumerate(f[:size]):
        if fi:
            for j, gj in enumerate(g[: size - i]):
                out[i + j] += fi * gj
    return out


@functools.lru_cache(maxsize=None)
def _j_coefficients(count: int) -> Tuple[int, ...]:
    """c_0 .. c_count with j = sum c_n q^(n-1)."""
    size = count + 1
    e4 = [1] + [240 * _sigma3(n) for n in range(1, size)]
    numerator = _series_mul(_series_mul(e4, e4, size), e4, size)

    # Euler's pentagonal series for prod (1 - q^n)
    euler = [0] * size
    k = 0
    while True:
        hits = 0
        for m in {k, -k}:
            e = m * (3 * m - 1) // 2
            if e < size:
                euler[e] += -1 if m % 2 else 1
                hits += 1
        if not hits:
            break
        k += 1

    p2 = _series_mul(euler, euler, size)
    p4 = _series_mul(p2, p2, size)
    p8 = _series_mul(p4, p4, size)
    p16 = _series_mul(p8, p8, size)
    delta = _series_mul(p16, p8, size)

    quotient = [0] * size
    for n in range(size):
        acc = numerator[n]
        for i in range(1, n + 1):
            acc -= delta[i] * quotient[n - i]
        quotient[n] = acc
    return tuple(quotient)


def _q_tail_bound(q_abs: mpmath.mpf, terms: int) -> mpmath.mpf:
    """Bound for sum_{n > terms} |c_n| |q|^(n-1), using c_n <= exp(4 pi sqrt(n))."""
    with mp.workdps(20):
        n = terms + 1
        ratio = mp.exp(2 * mp.pi / mp.sqrt(n)) * q_abs
        if ratio >= 1:
            return mp.inf
        return mp.exp(4 * mp.pi * mp.sqrt(n)) * q_abs ** (n - 1) / (1 - ratio)


def terms_for_digits(tau, digits: int) -> int:
    """Number of q-series terms for j at tau to reach 10^-digits absolute error."""
    q_abs = mp.exp(-2 * mp.pi * as_mpc(tau).imag)
    threshold = mp.mpf(10) ** (-digits)
    terms = MIN_Q_SERIES_TERMS
    while _q_tail_bound(q_abs, terms) > threshold:
        terms += 10
        if terms > MAX_Q_SERIES_TERMS:
            raise types.PrecisionExhausted(f"q-series at {tau} needs too many terms")
    return terms


def _j_series(tau: mpmath.mpc, terms: int) -> mpmath.mpc:
    coeffs = _j_coefficients(terms)
    q = mp.exp(2j * mp.pi * tau)
    acc = mp.mpc(0)
    for c in reversed(coeffs):
        acc = acc * q + c
    return acc / q


def j_from_q_series(
    tau: types.PeriodPoint,
    terms: int = 50,
    ctx: types.PrecisionContext = DEFAULT_PRECISION,
) -> types.QSeriesValue:
    """j(tau) from its q-expansion q^-1 + 744 + 196884 q + ... ."""
    if terms < MIN_Q_SERIES_TERMS:
        raise ValueError(f"at least {MIN_Q_SERIES_TERMS} terms are required")
    if tau.tau.imag < MIN_Q_SERIES_IM:
        raise types.InsufficientImaginaryPart(
            f"Im(tau) = {tau.tau.imag} is below {MIN_Q_SERIES_IM}"
        )
    with mp.workdps(_working(ctx)):
        q_abs = mp.exp(-2 * mp.pi * tau.tau.imag)
        return types.QSeriesValue(
            _j_series(tau.tau, terms), _q_tail_bound(q_abs, terms)
        )


def j_reduced(tau, digits: int) -> mpmath.mpc:
    """j at any tau, evaluated after reduction with enough terms for the given digits."""
    with mp.workdps(digits + GUARD_DIGITS):
        reduced, _ = reduce_to_fundamental(tau)
        return _j_series(reduced.tau, terms_for_digits(reduced.tau, digits + 5))
