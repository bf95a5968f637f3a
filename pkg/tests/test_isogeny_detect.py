"""Modular polynomials, isogeny matrices and complex multiplication."""
import random
from fractions import Fraction

import mpmath  # type: ignore
import pytest  # type: ignore
from mpmath import mp

from isomatrix import analytic_kernel as ak
from isomatrix import isogeny_detect
from isomatrix import legendre_curves as lc
from isomatrix import types

TIGHT = mpmath.mpf(10) ** -40


def _tau(value) -> types.PeriodPoint:
    return types.PeriodPoint(value)


@pytest.mark.parametrize(
    "N, expected", [(1, 1), (2, 3), (3, 4), (4, 6), (6, 12), (7, 8)]
)
def test_psi(N, expected):
    assert isogeny_detect.psi(N) == expected


@pytest.mark.parametrize("N", range(1, 9))
def test_one_triangular_matrix_per_cyclic_subgroup(N):
    matrices = isogeny_detect.triangular_matrices(N)
    assert len(matrices) == isogeny_detect.psi(N)
    assert all(M.det == N and M.is_primitive() for M in matrices)


def test_level_one_is_the_diagonal():
    phi = isogeny_detect.modular_polynomial(1)
    assert phi.coeffs == {(1, 0): 1, (0, 1): -1}
    assert isogeny_detect.is_cyclic_isogenous(Fraction(5, 3), Fraction(5, 3), 1)


def test_level_two_coefficients():
    phi = isogeny_detect.modular_polynomial(2)
    assert phi.degree == 3
    assert phi.is_symmetric()
    assert phi.coefficient(3, 0) == 1
    assert phi.coefficient(2, 2) == -1
    assert phi.coefficient(2, 1) == 1488
    assert phi.coefficient(2, 0) == -162000
    assert phi.coefficient(1, 1) == 40773375
    assert phi.coefficient(1, 0) == 8748000000
    assert phi.coefficient(0, 0) == -157464000000000


def test_level_three_coefficients():
    phi = isogeny_detect.modular_polynomial(3)
    assert phi.degree == 4
    assert phi.is_symmetric()
    assert phi.coefficient(3, 2) == 2232
    assert phi.coefficient(0, 0) == 0


def test_level_outside_cap():
    with pytest.raises(ValueError):
        isogeny_detect.modular_polynomial(isogeny_detect.N_CAP + 1)
    with pytest.raises(ValueError):
        isogeny_detect.modular_polynomial(0)


def test_text_format():
    phi = isogeny_detect.modular_polynomial(2)
    text = phi.to_text()
    assert text.splitlines()[0] == "PHI N 2 DEG 3"
    assert isogeny_detect.ModularPolynomial.from_text(text) == phi


@pytest.mark.parametrize(
    "text",
    ["", "PHI 2 DEG 3\n", "PHI N 2 DEG 3\n3 0\n", "PHI N 2 DEG 5\n3 0 1\n0 3 1\n"],
)
def test_text_format_errors(text):
    with pytest.raises(types.IsomatrixError):
        isogeny_detect.ModularPolynomial.from_text(text)


def test_cyclic_isogenies_between_rational_j():
    assert isogeny_detect.is_cyclic_isogenous(1728, 287496, 2)
    assert not isogeny_detect.is_cyclic_isogenous(0, 1728, 2)


def test_legendre_two_isogeny():
    assert isogeny_detect.legendre_two_isogeny(4) == Fraction(8, 9)
    assert isogeny_detect.legendre_two_isogeny(Fraction(1, 9)) == Fraction(3, 4)
    assert isogeny_detect.legendre_two_isogeny(2) is None
    assert isogeny_detect.legendre_two_isogeny(-4) is None
    j1, j2 = lc.j_invariant(4), lc.j_invariant(Fraction(8, 9))
    assert isogeny_detect.is_cyclic_isogenous(j1, j2, 2)


def test_find_isogeny_matrix_for_2i_and_i():
    with mp.workdps(80):
        tau1, tau2 = _tau(mp.mpc(0, 2)), _tau(mp.mpc(0, 1))
    witness = isogeny_detect.find_isogeny_matrix(tau1, tau2, N_max=5)
    assert witness is not None
    assert witness.matrix == types.Matrix2(2, 0, 0, 1)
    assert witness.N == 2
    assert abs(witness.alpha - 1) < TIGHT
    assert abs(witness.transport - 2) < TIGHT


def test_find_isogeny_matrix_level_three():
    with mp.workdps(80):
        tau1, tau2 = _tau(mp.mpc(0, 3)), _tau(mp.mpc(0, 1))
    witness = isogeny_detect.find_isogeny_matrix(tau1, tau2, N_max=5)
    assert witness is not None
    assert witness.N == 3


def test_find_isogeny_matrix_between_legendre_periods():
    tau1 = ak.period_from_lambda(4)
    tau2 = ak.period_from_lambda(Fraction(8, 9))
    witness = isogeny_detect.find_isogeny_matrix(tau1, tau2, N_max=3)
    assert witness is not None
    assert witness.N == 2
    with mp.workdps(60):
        assert abs(witness.matrix.act(tau2.tau) - tau1.tau) < TIGHT
        assert abs(witness.alpha * witness.transport - 2) < TIGHT


def test_no_isogeny_between_different_cm_fields():
    with mp.workdps(80):
        tau1, tau2 = _tau(mp.mpc(0, 1)), _tau(mp.mpc(0, mp.sqrt(2)))
    assert isogeny_detect.find_isogeny_matrix(tau1, tau2, N_max=10) is None


def test_map_point_analytic():
    with mp.workdps(80):
        tau1, tau2 = _tau(mp.mpc(0, 2)), _tau(mp.mpc(0, 1))
    witness = isogeny_detect.find_isogeny_matrix(tau1, tau2, N_max=5)
    with mp.workdps(60):
        quarter = types.EllipticLogarithm(mp.mpf(1) / 4, tau2)
        half = types.EllipticLogarithm(mp.mpf(1) / 2, tau2)
        image = isogeny_detect.map_point_analytic(quarter, witness, tau1)
        assert image.tau == tau1
        assert abs(image.z - mp.mpf(1) / 2) < TIGHT
        kernel = isogeny_detect.map_point_analytic(half, witness, tau1)
        assert ak.lattice_distance(kernel.z, 0, tau1) < TIGHT


def test_isogeny_witness_validation():
    with pytest.raises(types.ValidationError):
        isogeny_detect.IsogenyWitness(2, 0, 0, 2, 4, mpmath.mpc(2), mpmath.mpc(2))
    with pytest.raises(types.ValidationError):
        isogeny_detect.IsogenyWitness(2, 0, 0, 1, 3, mpmath.mpc(1), mpmath.mpc(2))


@pytest.mark.parametrize(
    "tau_text, delta, degree",
    [("i", -4, 5), ("rho", -3, 3), ("i sqrt 2", -8, 18)],
)
def test_detect_cm(tau_text, delta, degree):
    with mp.workdps(80):
        tau = {
            "i": mp.mpc(0, 1),
            "rho": mp.mpc(mp.mpf(-1) / 2, mp.sqrt(3) / 2),
            "i sqrt 2": mp.mpc(0, mp.sqrt(2)),
        }[tau_text]
        cm = isogeny_detect.detect_cm(_tau(tau))
    assert cm is not None
    assert cm.Delta == delta
    assert isogeny_detect.endomorphism_degree(cm) == degree


def test_no_cm_at_a_generic_period():
    tau = ak.period_from_lambda(3)
    assert isogeny_detect.detect_cm(tau) is None


def test_cm_witness_validation():
    with pytest.raises(types.ValidationError):
        isogeny_detect.CMWitness(1, 0, 1, -3, mpmath.mpc(0))
    with pytest.raises(types.ValidationError):
        isogeny_detect.CMWitness(2, 2, 2, -12, mpmath.mpc(0))


@pytest.mark.parametrize(
    "delta, h",
    [(-3, 1), (-4, 1), (-7, 1), (-8, 1), (-11, 1), (-15, 2), (-23, 3), (-163, 1)],
)
def test_class_number(delta, h):
    assert isogeny_detect.class_number(delta) == h


def test_rational_cm_j_invariants_have_class_number_one():
    for delta in isogeny_detect.RATIONAL_CM_J_INVARIANTS:
        assert isogeny_detect.class_number(delta) == 1
    assert isogeny_detect.RATIONAL_CM_J_INVARIANTS[-4] == lc.j_invariant(Fraction(1, 2))


def test_reduced_forms():
    assert sorted(isogeny_detect.reduced_forms(-20)) == [(1, 0, 5), (2, 2, 3)]


@pytest.mark.parametrize("delta", [-5, 0, 4, -(10 ** 7)])
def test_invalid_discriminant(delta):
    with pytest.raises(types.InvalidDiscriminant):
        isogeny_detect.class_number(delta)


@pytest.mark.slow
def test_level_five_is_stable_across_precisions():
    phi = isogeny_detect.modular_polynomial(5)
    assert phi.degree == isogeny_detect.psi(5) == 6
    assert phi.is_symmetric()
    assert phi.coefficient(6, 0) == 1
    assert phi.coefficient(5, 5) == -1
    assert phi.coefficient(5, 4) == 3720

    wider = types.PrecisionContext.with_working(260)
    rebuilt = isogeny_detect.modular_polynomial(5, wider, force=True)
    assert rebuilt.coeffs == phi.coeffs


def _random_reduced_period(rng: random.Random) -> types.PeriodPoint:
    # 200 random bits per coordinate keep the point away from small CM discriminants
    with mp.workdps(80):
        while True:
            u, v = (mp.mpf(rng.getrandbits(200)) / mp.mpf(2) ** 200 for _ in range(2))
            tau = mp.mpc(u - mp.mpf(1) / 2, mp.mpf("0.866") + 2 * v)
            if abs(tau) >= 1:
                return _tau(tau)


def _random_matrix(rng: random.Random, entries: int, N_max: int) -> types.Matrix2:
    while True:
        M = types.Matrix2(*(rng.randint(-entries, entries) for _ in range(4)))
        if 0 < M.det <= N_max and M.is_primitive():
            return M


@pytest.mark.slow
def test_planted_isogeny_matrices_are_recovered():
    rng = random.Random(41)
    recovered = 0
    for _ in range(100):
        tau2 = _random_reduced_period(rng)
        M = _random_matrix(rng, 20, 50)
        with mp.workdps(80):
            tau1 = _tau(M.act(tau2.tau))
        witness = isogeny_detect.find_isogeny_matrix(tau1, tau2, N_max=50)
        if witness is None or witness.N != M.det:
            continue
        with mp.workdps(60):
            if abs(witness.matrix.act(tau2.tau) - tau1.tau) < TIGHT:
                recovered += 1
    assert recovered >= 99


@pytest.mark.slow
def test_random_periods_carry_no_isogeny_witness():
    rng = random.Random(43)
    for _ in range(100):
        tau1, tau2 = _random_reduced_period(rng), _random_reduced_period(rng)
        assert isogeny_detect.find_isogeny_matrix(tau1, tau2, N_max=50) is None
