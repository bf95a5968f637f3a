"""Modular polynomials, isogeny matrices between periods, CM and class numbers."""

import dataclasses
import logging
import math
import threading
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

import mpmath  # type: ignore
import sympy  # type: ignore
from mpmath import mp

from . import _lattice
from . import analytic_kernel as ak
from . import types

logger = logging.getLogger(__name__)

N_CAP = 7
# c in |A|, |B|, |C|, |D| <= c N^10 for a reduced period matrix
MATRIX_HEIGHT_CONSTANT = 10 ** 6
RELATION_MARGIN = 10
MAX_DISCRIMINANT = 10 ** 6
ROUNDING_RESIDUE = 0.25

# the thirteen rational CM j-invariants, by discriminant
RATIONAL_CM_J_INVARIANTS = {
    -3: 0,
    -4: 1728,
    -7: -3375,
    -8: 8000,
    -11: -32768,
    -12: 54000,
    -16: 287496,
    -19: -884736,
    -27: -12288000,
    -28: 16581375,
    -43: -884736000,
    -67: -147197952000,
    -163: -262537412640768000,
}


def psi(N: int) -> int:
    """Index of Gamma_0(N) in SL2(Z): N * prod over p | N of (1 + 1/p)."""
    value = N
    for p in sympy.primefactors(N):
        value = value // p * (p + 1)
    return value


def triangular_matrices(N: int) -> List[types.Matrix2]:
    """Primitive (a, b; 0, d) with ad = N and 0 <= b < d."""
    out = []
    for a in sympy.divisors(N):
        d = N // a
        for b in range(d):
            if math.gcd(math.gcd(a, b), d) == 1:
                out.append(types.Matrix2(a, b, 0, d))
    return out


@dataclasses.dataclass(frozen=True)
class ModularPolynomial:
    """Phi_N as a map (exponent of X, exponent of Y) -> integer coefficient."""

    N: int
    coeffs: Dict[Tuple[int, int], int]

    @property
    def degree(self) -> int:
        return max(e for e, _ in self.coeffs)

    def coefficient(self, ex: int, ey: int) -> int:
        return self.coeffs.get((ex, ey), 0)

    def is_symmetric(self) -> bool:
        return all(self.coefficient(ey, ex) == c for (ex, ey), c in self.coeffs.items())

    def evaluate(self, x, y) -> Fraction:
        """Exact value at rationals, homogenized over the common denominators."""
        x, y = Fraction(x), Fraction(y)
        deg = self.degree
        xp, xq, yp, yq = x.numerator, x.denominator, y.numerator, y.denominator
        total = sum(
            c * xp ** ex * xq ** (deg - ex) * yp ** ey * yq ** (deg - ey)
            for (ex, ey), c in self.coeffs.items()
        )
        return Fraction(total, xq ** deg * yq ** deg)

    def evaluate_numeric(self, x, y) -> mpmath.mpc:
        x, y = mp.mpc(x), mp.mpc(y)
        return mp.fsum(c * x ** ex * y ** ey for (ex, ey), c in self.coeffs.items())

    def monomials(self) -> List[Tuple[int, int, int]]:
        return sorted(
            ((ex, ey, c) for (ex, ey), c in self.coeffs.items()),
            key=lambda m: (-m[0], -m[1]),
        )

    def to_text(self) -> str:
        lines = [f"PHI N {self.N} DEG {self.degree}"]
        lines.extend(f"{ex} {ey} {c}" for ex, ey, c in self.monomials())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ModularPolynomial":
        lines = [line for line in text.splitlines() if line.strip()]
        if not lines:
            raise types.ParseError("empty modular polynomial file")
        header = lines[0].split()
        if len(header) != 5 or (header[0], header[1], header[3]) != ("PHI", "N", "DEG"):
            raise types.ParseError(f"bad header '{lines[0]}'", position=0)
        coeffs = {}
        for number, line in enumerate(lines[1:], start=1):
            parts = line.split()
            if len(parts) != 3:
                raise types.ParseError(f"bad monomial line '{line}'", position=number)
            ex, ey, c = (int(p) for p in parts)
            coeffs[(ex, ey)] = c
        poly = cls(int(header[2]), coeffs)
        if poly.degree != int(header[4]):
            raise types.ValidationError(
                "degree", f"header says {header[4]}, monomials give {poly.degree}"
            )
        return poly


_modpoly_cache: Dict[int, ModularPolynomial] = {}
_modpoly_lock = threading.Lock()


def install_modular_polynomial(poly: ModularPolynomial):
    """Seed the in-process cache, e.g. with polynomials read from disk."""
    with _modpoly_lock:
        _modpoly_cache.setdefault(poly.N, poly)


def cached_modular_polynomials() -> Dict[int, ModularPolynomial]:
    with _modpoly_lock:
        return dict(_modpoly_cache)


def modular_polynomial(
    N: int,
    ctx: types.PrecisionContext = ak.DEFAULT_PRECISION,
    cap: int = N_CAP,
    force: bool = False,
) -> ModularPolynomial:
    """Phi_N with exact integer coefficients, interpolated from q-expansions of j."""
    if not 1 <= N <= cap:
        raise ValueError(f"level {N} outside [1, {cap}]")
    if not force:
        with _modpoly_lock:
            if N in _modpoly_cache:
                return _modpoly_cache[N]

    poly = _compute_modular_polynomial(N, ctx)
    with _modpoly_lock:
        if force:
            _modpoly_cache[N] = poly
        return _modpoly_cache.setdefault(N, poly)


def _compute_modular_polynomial(
    N: int, ctx: types.PrecisionContext
) -> ModularPolynomial:
    if N == 1:
        return ModularPolynomial(1, {(1, 0): 1, (0, 1): -1})

    deg = psi(N)
    digits = max(ctx.working_digits, 40 + 25 * deg)
    for _ in range(4):
        coeffs, residue = _interpolate(N, deg, digits)
        poly = ModularPolynomial(N, coeffs)
        if residue < ROUNDING_RESIDUE and poly.is_symmetric() and poly.degree == deg:
            check, check_residue = _interpolate(N, deg, digits + 20)
            if check == coeffs:
                logger.debug(
                    "Phi_%d at %d digits, residues %s / %s",
                    N,
                    digits,
                    mp.nstr(residue, 5),
                    mp.nstr(check_residue, 5),
                )
                return poly
        logger.debug("Phi_%d unstable at %d digits, escalating", N, digits)
        digits *= 2
    raise types.PrecisionExhausted(f"could not interpolate Phi_{N}")


def _interpolate(
    N: int, deg: int, digits: int
) -> Tuple[Dict[Tuple[int, int], int], mpmath.mpf]:
    """Coefficients of prod_M (X - j(M tau)) at deg + 1 samples, solved for Y."""
    with mp.workdps(digits + ak.GUARD_DIGITS):
        matrices = triangular_matrices(N)
        ys = []
        x_rows = []
        for k in range(deg + 1):
            tau = mp.mpc(0, 1 + mp.mpf(3) * k / (10 * deg))
            ys.append(ak.j_reduced(tau, digits).real)
            poly = [mp.mpc(1)]
            for M in matrices:
                root = ak.j_reduced(M.act(tau), digits)
                shifted = [mp.mpc(0)] + poly
                for i, c in enumerate(poly):
                    shifted[i] -= root * c
                poly = shifted
            x_rows.append(poly)

        vandermonde = mp.matrix([[y ** l for l in range(deg + 1)] for y in ys])
        coeffs: Dict[Tuple[int, int], int] = {}
        residue = mp.mpf(0)
        for ex in range(deg + 1):
            rhs = mp.matrix([x_rows[k][ex].real for k in range(deg + 1)])
            solution = mp.lu_solve(vandermonde, rhs)
            for ey in range(deg + 1):
                value = solution[ey]
                rounded = int(mp.nint(value))
                residue = max(residue, abs(value - rounded))
                if rounded:
                    coeffs[(ex, ey)] = rounded
        return coeffs, residue


def is_cyclic_isogenous(
    j1, j2, N: int, phi: Optional[ModularPolynomial] = None
) -> bool:
    """Whether Phi_N(j1, j2) vanishes exactly."""
    if phi is None:
        phi = modular_polynomial(N)
    return phi.evaluate(j1, j2) == 0


@dataclasses.dataclass(frozen=True)
class IsogenyWitness:
    """tau1 = M tau2 for the primitive matrix M = (A, B; C, D) of determinant N.

    alpha = C tau2 + D; transport = A - C tau1 = N / alpha is the multiplier taking
    logarithms on E_tau2 to logarithms on E_tau1.
    """

    A: int
    B: int
    C: int
    D: int
    N: int
    alpha: mpmath.mpc
    transport: mpmath.mpc

    def __post_init__(self):
        if self.A * self.D - self.B * self.C != self.N or self.N <= 0:
            raise types.ValidationError("AD - BC = N", f"{self.matrix} vs N = {self.N}")
        if not self.matrix.is_primitive():
            raise types.ValidationError("primitive", str(self.matrix))
        if self.alpha == 0:
            raise types.ValidationError("alpha != 0")

    @property
    def matrix(self) -> types.Matrix2:
        return types.Matrix2(self.A, self.B, self.C, self.D)

    @classmethod
    def from_matrix(
        cls, M: types.Matrix2, tau1: types.PeriodPoint, tau2: types.PeriodPoint
    ) -> "IsogenyWitness":
        return cls(
            M.a,
            M.b,
            M.c,
            M.d,
            M.det,
            M.c * tau2.tau + M.d,
            M.a - M.c * tau1.tau,
        )


def _tie_key(M: types.Matrix2) -> Tuple:
    return (M.det, abs(M.c), (abs(M.a), abs(M.b), abs(M.c), abs(M.d)))


def _same_orbit_matrix(
    r1: mpmath.mpc, r2: mpmath.mpc, tol: mpmath.mpf
) -> Optional[types.Matrix2]:
    """g in SL2(Z) with g r2 = r1 for two reduced points, if they agree."""
    for g in (
        types.Matrix2.identity(),
        types.Matrix2(1, 1, 0, 1),
        types.Matrix2(1, -1, 0, 1),
        types.Matrix2(0, -1, 1, 0),
    ):
        if abs(g.act(r2) - r1) < tol:
            return g
    return None


def _smaller_witness(
    tau1: mpmath.mpc, tau2: mpmath.mpc, below: int, tol: mpmath.mpf
) -> Optional[types.Matrix2]:
    """Exhaustive search over the divisor-bounded triangular matrices of det < below."""
    r1, g1 = ak.reduce_to_fundamental(tau1)
    for N in range(1, below):
        for T in triangular_matrices(N):
            r2, g2 = ak.reduce_to_fundamental(T.act(tau2))
            g = _same_orbit_matrix(r1.tau, r2.tau, tol)
            if g is not None:
                return g1.inverse() @ g @ g2 @ T
    return None


def find_isogeny_matrix(
    tau1: types.PeriodPoint,
    tau2: types.PeriodPoint,
    N_max: int = 50,
    ctx: types.PrecisionContext = ak.DEFAULT_PRECISION,
    c_bound: int = MATRIX_HEIGHT_CONSTANT,
) -> Optional[IsogenyWitness]:
    """The minimal primitive M with tau1 = M tau2 and det M <= N_max, if any.

    Integer relations C t1 t2 + D t1 - A t2 - B = 0 come from LLL on
    (t1 t2, t1, t2, 1); the best one is then checked against every smaller level.
    """
    with mp.workdps(ctx.working_digits + ak.GUARD_DIGITS):
        t1, t2 = tau1.tau, tau2.tau
        values = [t1 * t2, t1, t2, mp.mpc(1)]
        best: Optional[types.Matrix2] = None
        ambiguous = mp.mpf(0)
        for C, D, minus_a, minus_b in _lattice.candidate_relations(
            values, ctx.working_digits - RELATION_MARGIN
        ):
            M = types.Matrix2(-minus_a, -minus_b, C, D)
            if M.det <= 0 or M.det > N_max or not M.is_primitive():
                continue
            if M.height > c_bound * M.det ** 10:
                continue
            res = _lattice.residual((C, D, minus_a, minus_b), values)
            if res < ctx.accept:
                if best is None or _tie_key(M) < _tie_key(best):
                    best = M
            elif res <= ctx.reject:
                ambiguous = max(ambiguous, res)

        if best is None:
            if ambiguous:
                raise types.PrecisionExhausted(
                    f"isogeny residual {mp.nstr(ambiguous, 5)} is ambiguous"
                )
            return None

        smaller = _smaller_witness(t1, t2, best.det, ctx.accept)
        if smaller is not None and smaller.is_primitive():
            logger.debug("level %d improved to %d", best.det, smaller.det)
            best = smaller
        return IsogenyWitness.from_matrix(best, tau1, tau2)


def map_point_analytic(
    w: types.EllipticLogarithm,
    witness: IsogenyWitness,
    tau1: types.PeriodPoint,
    ctx: types.PrecisionContext = ak.DEFAULT_PRECISION,
) -> types.EllipticLogarithm:
    """Image of a logarithm on E_tau2 under the isogeny to E_tau1.

    The multiplier is witness.transport = A - C tau1 = N / alpha, not alpha itself:
    alpha = C tau2 + D carries Lambda_tau1 into Lambda_tau2, the dual direction.
    """
    with mp.workdps(ctx.working_digits + ak.GUARD_DIGITS):
        z = witness.transport * ak.as_mpc(w.z)
        return types.EllipticLogarithm(ak.lattice_reduce(z, tau1), tau1)


@dataclasses.dataclass(frozen=True)
class CMWitness:
    a: int
    b: int
    c: int
    Delta: int
    rho0: mpmath.mpc

    def __post_init__(self):
        if self.Delta != self.b * self.b - 4 * self.a * self.c or self.Delta >= 0:
            raise types.ValidationError("Delta = b^2 - 4ac < 0", str(self))
        if math.gcd(math.gcd(self.a, self.b), self.c) != 1:
            raise types.ValidationError("gcd(a, b, c) = 1", str(self))


def cm_generator(Delta: int) -> mpmath.mpc:
    """rho0 = (Delta + sqrt(Delta)) / 2."""
    return (Delta + mp.sqrt(mp.mpf(Delta))) / 2


def detect_cm(
    tau: types.PeriodPoint,
    coeff_bound: int = 10 ** 4,
    ctx: types.PrecisionContext = ak.DEFAULT_PRECISION,
) -> Optional[CMWitness]:
    """The quadratic relation a tau^2 + b tau + c = 0 of smallest |Delta|, if any."""
    with mp.workdps(ctx.working_digits + ak.GUARD_DIGITS):
        t = tau.tau
        values = [t * t, t, mp.mpc(1)]
        found: List[Tuple[int, int, int]] = []
        ambiguous = mp.mpf(0)
        for a, b, c in _lattice.candidate_relations(
            values, ctx.working_digits - RELATION_MARGIN
        ):
            if a == 0 or max(abs(a), abs(b), abs(c)) > coeff_bound:
                continue
            if a < 0:
                a, b, c = -a, -b, -c
            g = math.gcd(math.gcd(a, b), c)
            a, b, c = a // g, b // g, c // g
            if b * b - 4 * a * c >= 0:
                continue
            res = _lattice.residual((a, b, c), values)
            if res < ctx.accept:
                found.append((a, b, c))
            elif res <= ctx.reject:
                ambiguous = max(ambiguous, res)

        if not found:
            if ambiguous:
                raise types.PrecisionExhausted(
                    f"CM residual {mp.nstr(ambiguous, 5)} is ambiguous"
                )
            return None
        a, b, c = min(found, key=lambda f: (abs(f[1] * f[1] - 4 * f[0] * f[2]), f))
        delta = b * b - 4 * a * c
        return CMWitness(a, b, c, delta, cm_generator(delta))


def endomorphism_degree(cm: CMWitness) -> int:
    """(Delta^2 - Delta) / 4, the degree of rho0 as an isogeny."""
    return (cm.Delta * cm.Delta - cm.Delta) // 4


def reduced_forms(Delta: int) -> Iterable[Tuple[int, int, int]]:
    """Reduced primitive forms (a, b, c) of discriminant Delta."""
    a = 1
    while 3 * a * a <= -Delta:
        for b in range(-a + 1, a + 1):
            if (b - Delta) % 2:
                continue
            numerator = b * b - Delta
            if numerator % (4 * a):
                continue
            c = numerator // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                yield a, b, c
        a += 1


def class_number(Delta: int) -> int:
    if Delta >= 0 or Delta % 4 not in (0, 1) or -Delta > MAX_DISCRIMINANT:
        raise types.InvalidDiscriminant(f"{Delta} is not a valid negative discriminant")
    return sum(1 for _ in reduced_forms(Delta))


def legendre_two_isogeny(lam) -> Optional[Fraction]:
    """Legendre parameter of the quotient by {O, (0, 0)} when it is rational.

    For tau with L(tau) = lam this is L(2 tau) = 4s / (1 + s)^2, s^2 = lam, s > 0.
    """
    lam = Fraction(lam)
    if lam <= 0:
        return None
    num, den = math.isqrt(lam.numerator), math.isqrt(lam.denominator)
    if num * num != lam.numerator or den * den != lam.denominator:
        return None
    s = Fraction(num, den)
    return 4 * s / (1 + s) ** 2
