"""Weil and canonical heights."""
import logging
import math
from fractions import Fraction

import mpmath  # type: ignore
import pytest  # type: ignore
from mpmath import mp

from isomatrix import analytic_kernel as ak
from isomatrix import heights
from isomatrix import isogeny_detect
from isomatrix import legendre_curves as lc
from isomatrix import types

E = lc.LegendreParam(Fraction(17, 6))
P = lc.point(3, 1, E)


def test_weil_height_of_rationals():
    weil = heights.weil_height_rational
    assert weil(Fraction(-3, 7)).value == pytest.approx(math.log(7))
    assert weil(Fraction(6, 4)).value == pytest.approx(math.log(3))
    assert weil(1).value == 0.0


def test_h1_height():
    assert heights.h1_height(Fraction(-3, 7)) == 7
    assert heights.h1_height(Fraction(-9, 7)) == 9
    assert heights.h1_height(mpmath.mpf("0.5")) == math.inf


def test_weil_height_of_gaussian_rationals():
    # 1 + i has Mahler measure 2
    assert heights.weil_height(heights.gaussian(1, 1)) == pytest.approx(math.log(2) / 2)
    assert heights.weil_height(heights.gaussian(Fraction(1, 3))) == pytest.approx(
        math.log(3)
    )


def test_point_height():
    assert heights.point_height(P) == pytest.approx(math.log(3))
    assert heights.point_height(lc.infinity(E)) == 0.0


def test_canonical_height_of_torsion_is_zero():
    Q = lc.point(3, 6, lc.LegendreParam(-3))
    assert heights.neron_tate(Q).value == 0.0
    assert heights.neron_tate(lc.two_torsion(E)[2]).value == 0.0


def test_canonical_height_is_quadratic():
    h = heights.neron_tate(P)
    h2 = heights.neron_tate(lc.add(P, P))
    assert h.value > 0
    assert abs(h2.value - 4 * h.value) <= h2.error_bound + 4 * h.error_bound


def test_x_only_height_agrees_with_projective_height():
    h = heights.neron_tate(P)
    hx = heights.neron_tate_x(Fraction(3), Fraction(17, 6))
    assert abs(h.value - hx.value) <= h.error_bound + hx.error_bound


def test_x_only_height_over_gaussian_rationals():
    h = heights.neron_tate_x(heights.gaussian(3, 1), heights.gaussian(Fraction(17, 6)))
    assert h.value > 0
    bound = heights.height_constant(Fraction(17, 6)) / 4 ** 5
    assert h.error_bound == pytest.approx(bound)


def test_multiplication_by_two_satisfies_the_height_identity():
    result = heights.check_isogeny_height_identity(P, 4, lc.add(P, P))
    assert result.holds


def test_wrong_degree_breaks_the_height_identity():
    result = heights.check_isogeny_height_identity(P, 1, lc.scalar_mul(5, P))
    assert not result.holds


def test_canonical_height_guards():
    with pytest.raises(types.CoordinateBlowup):
        heights.neron_tate(P, bit_cap=4)
    with pytest.raises(ValueError):
        heights.neron_tate(P, max_doublings=heights.MAX_DOUBLINGS + 1)
    with mp.workdps(30):
        numeric = lc.point(mp.mpc(3), mp.mpc(1), lc.LegendreParam(mp.mpc(17) / 6))
    with pytest.raises(ValueError):
        heights.neron_tate(numeric)


def test_recognize_coordinate():
    with mp.workdps(80):
        assert heights.recognize_coordinate(mp.mpf(1) / 3) == Fraction(1, 3)
        value = heights.recognize_coordinate(mp.mpc(mp.mpf(1) / 3, mp.mpf(-1) / 2))
        assert heights.gaussian_parts(value) == (Fraction(1, 3), Fraction(-1, 2))
        with pytest.raises(types.RecognitionFailed):
            heights.recognize_coordinate(mp.sqrt(2))


def test_bit_cap_keeps_the_coarser_error_bound(caplog):
    doubled = lc.add(P, P)
    cap = max(
        max(c.numerator.bit_length(), c.denominator.bit_length())
        for c in (doubled.x, doubled.y)
    )
    with caplog.at_level(logging.INFO, logger="isomatrix.heights"):
        h = heights.neron_tate(P, max_doublings=5, bit_cap=cap)
    assert h.error_bound == pytest.approx(heights.height_constant(Fraction(17, 6)) / 4)
    assert "stopping after 1 of 5 doublings" in caplog.text


def _points_with_small_coordinates():
    # lambda = x - y^2 / (x (x - 1)) puts (x, y) on E_lambda
    pairs = [(2, 1), (3, 2), (5, 1), (5, 3), (-2, 1), (-2, 3), (2, 3), (4, 1), (6, 5)]
    points = [P]
    for x, y in pairs:
        lam = Fraction(x) - Fraction(y * y, x * (x - 1))
        points.append(lc.point(x, y, lc.LegendreParam(lam)))
    return points


@pytest.mark.parametrize("Q", _points_with_small_coordinates())
@pytest.mark.parametrize("k", [2, 3])
def test_multiplication_satisfies_the_height_identity(Q, k):
    result = heights.check_isogeny_height_identity(Q, k * k, lc.scalar_mul(k, Q))
    assert result.holds


def test_two_isogeny_satisfies_the_height_identity():
    # (2, 2/3) has infinite order on E_{16/9}
    lam = Fraction(16, 9)
    Q = lc.point(2, Fraction(2, 3), lc.LegendreParam(lam))
    assert lc.is_torsion(Q) is None
    image_lam = isogeny_detect.legendre_two_isogeny(lam)
    assert image_lam == Fraction(48, 49)

    tau2 = ak.period_from_lambda(lam)
    tau1 = ak.period_from_lambda(image_lam)
    witness = isogeny_detect.find_isogeny_matrix(tau1, tau2, N_max=2)
    assert witness is not None and witness.N == 2

    log = ak.elliptic_log(Q.coords, lam, tau2)
    moved = isogeny_detect.map_point_analytic(log, witness, tau1)
    X, Y, Z = ak.parametrize_point(moved)
    with mp.workdps(60):
        image = lc.point(X / Z, Y / Z, lc.LegendreParam(image_lam))
        result = heights.check_isogeny_height_identity(Q, 2, image)
        assert result.holds
        assert result.rhs.value > 0


def test_complex_multiplication_satisfies_the_height_identity():
    # E_{1/2} has rank 0 over Q and Q(i); rho0 = -2 + i acts on its 2-torsion as i
    lam = Fraction(1, 2)
    tau = ak.period_from_lambda(lam)
    cm = isogeny_detect.detect_cm(tau)
    assert cm is not None and cm.Delta == -4
    degree = isogeny_detect.endomorphism_degree(cm)
    assert degree == 5

    for T in lc.two_torsion(lc.LegendreParam(lam))[1:]:
        log = ak.elliptic_log(T.coords, lam, tau)
        with mp.workdps(80):
            z = ak.lattice_reduce(cm.rho0 * log.z, tau)
            moved = types.EllipticLogarithm(z, tau)
        X, Y, Z = ak.parametrize_point(moved)
        with mp.workdps(60):
            image = lc.point(X / Z, Y / Z, lc.LegendreParam(lam))
            assert heights.recognize_coordinate(image.x) == 1 - T.x
            assert heights.check_isogeny_height_identity(T, degree, image).holds
