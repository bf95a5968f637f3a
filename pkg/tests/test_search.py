"""Curve specs, hypothesis checks, the oracle and the parameter scan."""
import json
from fractions import Fraction

import pytest  # type: ignore
import sympy  # type: ignore

from isomatrix import isogeny_detect
from isomatrix import legendre_curves as lc
from isomatrix import search
from isomatrix import types
from isomatrix.search import _rational_map as rm

from . import utils
from .utils import CONSTANT_CM_SPEC, PLANTED_SPEC, SQUARE_SPEC, SYMMETRIC_SPEC


def _spec(spec) -> search.CurveSpec:
    return search.parse_spec(utils.spec_document(spec))


@pytest.fixture(scope="module")
def planted_scan() -> search.ScanResult:
    return search.scan(_spec(PLANTED_SPEC), search.ScanConfig(h1_max=4, n_max=2))


def test_parse_spec():
    spec = _spec(PLANTED_SPEC)
    assert spec.name == "planted-2-isogeny"
    assert spec.m == 1 and spec.n == 0
    assert spec.fiber(Fraction(4)) == (Fraction(4), Fraction(8, 9))
    assert spec.fiber(Fraction(1)) is None
    section = spec.p_sections[0].point(Fraction(4), lc.LegendreParam(Fraction(4)))
    assert section.x == 0 and section.y == 0


def test_parse_spec_reports_bad_json():
    with pytest.raises(types.ParseError) as e:
        search.parse_spec("{")
    assert e.value.position >= 0


def test_parse_spec_reports_missing_fields():
    with pytest.raises(types.ParseError) as e:
        search.parse_spec(json.dumps({"lambda": "t"}))
    assert e.value.field == "mu"


def test_parse_spec_reports_the_offending_character():
    with pytest.raises(types.ParseError) as e:
        search.parse_spec(json.dumps({"lambda": "t$", "mu": "t"}))
    assert e.value.field == "lambda"
    assert e.value.position == 1


def test_parse_spec_rejects_bad_signs():
    document = dict(PLANTED_SPEC, p_sections=[{"x": "t", "sign": "*"}])
    with pytest.raises(types.ParseError):
        search.parse_spec(json.dumps(document))


def test_parse_spec_rejects_two_constant_maps():
    with pytest.raises(types.ValidationError):
        search.parse_spec(json.dumps({"lambda": "2", "mu": "1/2"}))


def test_scan_config_validation():
    with pytest.raises(types.ValidationError):
        search.ScanConfig(h1_max=-1)
    with pytest.raises(types.ValidationError):
        search.ScanConfig(n_max=0)
    with pytest.raises(types.ValidationError):
        search.ScanConfig(n_max=isogeny_detect.N_CAP + 1)
    with pytest.raises(types.ValidationError):
        search.ScanConfig(t_relation=0)
    with pytest.raises(types.ValidationError):
        search.ScanConfig(exclusion_radius=0)
    with pytest.raises(types.ValidationError):
        search.ScanConfig(exclusion_radius=0.5)


def test_scan_config_exclusion_radius_reaches_the_periods():
    near_one = Fraction(9, 10)
    assert search.ScanConfig().period(near_one).tau.imag > 0
    wide = search.ScanConfig(exclusion_radius=0.2)
    assert wide.as_dict()["exclusion_radius"] == 0.2
    with pytest.raises(types.DegenerateLambda):
        wide.period(near_one)
    with pytest.raises(types.DegenerateLambda):
        wide.period(Fraction(-1, 10))


def test_rational_maps():
    f = search.parse_rational_function("(t^2 - 1)/(t - 1)")
    assert f.degree == 1
    assert f(3) == 4
    g = search.parse_rational_function("1/t")
    assert g(0) is None
    assert g(Fraction(1, 2)) == 2
    assert search.parse_rational_function("7").is_constant


def test_j_composed():
    J = search.j_composed(search.parse_rational_function("t"))
    assert J(Fraction(1, 2)) == 1728
    assert J(-1) == 1728
    assert J.degree == 6
    assert search.j_composed(search.parse_rational_function("t^2")).degree == 12


def test_rational_roots():
    t = rm.T
    poly = sympy.Poly((2 * t - 1) * (t ** 2 + 1) * (t + 3) ** 2, t)
    assert search.rational_roots(poly) == [Fraction(-3), Fraction(1, 2)]
    with pytest.raises(ValueError):
        search.rational_roots(sympy.Poly(0, t))


def test_integer_coefficients():
    t = rm.T
    poly = sympy.Poly(t / 2 - sympy.Rational(1, 3), t, domain=sympy.QQ)
    assert rm.poly_coefficients(search.integer_coefficients(poly)) == (3, -2)
    poly = sympy.Poly(-t / 2, t, domain=sympy.QQ)
    assert rm.poly_coefficients(search.integer_coefficients(poly)) == (1, 0)


def test_fractions():
    assert search.fraction_text(Fraction(3)) == "3"
    assert search.fraction_text(Fraction(-1, 2)) == "-1/2"
    assert search.parse_fraction("8/9") == Fraction(8, 9)
    with pytest.raises(types.ParseError):
        search.parse_fraction("eight")


def test_enumerate_parameters():
    assert list(search.enumerate_parameters(0)) == []
    assert list(search.enumerate_parameters(1)) == [-1, 0, 1]
    second = set(search.enumerate_parameters(2))
    assert second == {
        Fraction(n, d)
        for n, d in [(-2, 1), (-1, 1), (0, 1), (1, 1), (2, 1), (-1, 2), (1, 2)]
    }
    assert list(search.enumerate_parameters(1, _spec(PLANTED_SPEC))) == [-1]


def test_parameters_are_ordered_by_height():
    params = list(search.enumerate_parameters(5))
    assert len(params) == len(set(params))
    assert [search.h1(t) for t in params] == sorted(search.h1(t) for t in params)


@pytest.mark.parametrize(
    "spec, report",
    [
        (PLANTED_SPEC, (6, 12, True, 1)),
        # t and 1/t share both j-invariants
        (SQUARE_SPEC, (3, 6, True, 2)),
        (SYMMETRIC_SPEC, (1, 1, False, 6)),
        (CONSTANT_CM_SPEC, (6, 0, True, 1)),
    ],
)
def test_asymmetry_check(spec, report):
    assert tuple(search.asymmetry_check(_spec(spec))) == report


@pytest.mark.parametrize(
    "spec, raw", [(SQUARE_SPEC, (6, 12)), (SYMMETRIC_SPEC, (6, 6))]
)
def test_asymmetry_degrees_before_the_image_correction(spec, raw):
    report = search.asymmetry_check(_spec(spec))
    assert (report.degX * report.fibration, report.degY * report.fibration) == raw
    curve = _spec(spec)
    assert (
        rm.j_composed(curve.lambda_map).degree,
        rm.j_composed(curve.mu_map).degree,
    ) == raw


def test_asymmetry_check_needs_a_moving_map():
    constant = search.CurveSpec(
        "constant",
        search.RationalMap.constant(2),
        search.RationalMap.constant(Fraction(1, 2)),
    )
    with pytest.raises(types.ConstantMapDegenerate):
        search.asymmetry_check(constant)


def test_oracle_degree():
    poly = search.isogeny_locus_oracle(_spec(SQUARE_SPEC), 2)
    assert not poly.is_zero
    assert poly.degree() <= isogeny_detect.psi(2) * (6 + 12)


def test_oracle_finds_the_planted_parameter():
    assert Fraction(4) in search.oracle_parameters(_spec(PLANTED_SPEC), 2, 4)


def test_oracle_of_identically_isogenous_families():
    spec = _spec(SYMMETRIC_SPEC)
    assert search.isogeny_locus_oracle(spec, 1).is_zero
    assert search.oracle_parameters(spec, 1, 2) == list(
        search.enumerate_parameters(2, spec)
    )


def test_oracle_needs_two_moving_maps():
    with pytest.raises(types.ValidationError):
        search.isogeny_locus_oracle(_spec(CONSTANT_CM_SPEC), 2)


def test_scan_refuses_a_symmetric_family():
    with pytest.raises(types.HypothesisViolation):
        search.scan(_spec(SYMMETRIC_SPEC), search.ScanConfig(h1_max=2, n_max=1))


@pytest.mark.slow
def test_scan_finds_the_planted_point(planted_scan):
    found = {f.t0: f for f in planted_scan.findings}
    assert Fraction(4) in found
    finding = found[Fraction(4)]
    assert finding.certified
    assert finding.mu0 == Fraction(8, 9)
    assert finding.isogeny.N == 2
    assert finding.relation.a == (2,)
    assert 2 in finding.levels
    assert planted_scan.asymmetry.asymmetric
    assert planted_scan.scanned == len(
        list(search.enumerate_parameters(4, _spec(PLANTED_SPEC)))
    )


@pytest.mark.slow
def test_scan_hits_agree_with_the_oracle(planted_scan):
    spec = _spec(PLANTED_SPEC)
    assert Fraction(4) in planted_scan.hits[2]
    assert planted_scan.hits[2] == sorted(search.oracle_parameters(spec, 2, 4))


@pytest.mark.slow
def test_emit_json_lines(planted_scan):
    spec = _spec(PLANTED_SPEC)
    config = search.ScanConfig(h1_max=4, n_max=2)
    header = search.build_header("0.3", spec, config, 0, scanned=planted_scan.scanned)
    text = search.emit_to_string(planted_scan.findings, "json", header)

    parsed_header, records = search.parse_findings(text)
    assert parsed_header["tool"] == "isomatrix"
    assert parsed_header["config"]["h1_max"] == 4
    assert parsed_header["scanned"] == planted_scan.scanned
    assert len(records) == len(planted_scan.findings)
    planted = next(r for r in records if r["t0"] == "4")
    assert planted["mu0"] == "8/9"
    assert planted["N"] == 2
    assert planted["relation"]["a"] == [2]
    assert planted["certified"] is True


@pytest.mark.slow
def test_scan_output_is_deterministic(planted_scan):
    spec = _spec(PLANTED_SPEC)
    config = search.ScanConfig(h1_max=4, n_max=2)
    again = search.scan(spec, config)
    header = search.build_header("0.3", spec, config, 0)
    for fmt in ("json", "csv"):
        first = search.emit_to_string(planted_scan.findings, fmt, header)
        second = search.emit_to_string(again.findings, fmt, header)
        assert first == second
    assert again.hits == planted_scan.hits


@pytest.mark.slow
def test_findings_saturate_with_the_parameter_height():
    spec = _spec(PLANTED_SPEC)
    smaller = search.scan(spec, search.ScanConfig(h1_max=50, n_max=2))
    larger = search.scan(spec, search.ScanConfig(h1_max=100, n_max=2))
    assert len(larger.findings) == len(smaller.findings) >= 1
    assert [f.t0 for f in larger.findings] == [f.t0 for f in smaller.findings]
    for N, hits in larger.hits.items():
        assert [t for t in hits if search.h1(t) <= 50] == smaller.hits[N]


@pytest.mark.slow
def test_emit_csv(planted_scan):
    text = search.emit_to_string(planted_scan.findings, "csv", {"tool": "isomatrix"})
    lines = text.splitlines()
    assert lines[0] == '# {"tool": "isomatrix"}'
    assert lines[1] == ",".join(search.CSV_COLUMNS)
    assert any(line.startswith("4,4,8/9,2,") for line in lines[2:])


def test_emit_without_findings():
    assert search.emit_to_string([], "json", {"tool": "isomatrix"}) == (
        '{"tool": "isomatrix"}\n'
    )


def test_parse_findings_errors():
    with pytest.raises(types.ParseError):
        search.parse_findings("")
    with pytest.raises(types.ParseError):
        search.parse_findings('{"tool": "isomatrix"}\n{"t0": "4"}\n')
    with pytest.raises(types.ParseError):
        search.parse_findings("{not json}\n")
