"""Findings output: JSON lines, or CSV with a commented header line.

JSON lines: the first line is the header object, then one finding per line with
keys in the order of FINDING_KEYS. CSV: a '#'-prefixed JSON header line, then a
row of CSV_COLUMNS, then one row per finding.
"""

import csv
import io
import json
from typing import Any, Dict, List, Optional, Sequence, TextIO, Tuple

from mpmath import mp

from isomatrix import isogeny_detect
from isomatrix import types

from . import _rational_map as rm
from . import _scan
from . import _spec

FINDING_KEYS = (
    "t0",
    "lambda0",
    "mu0",
    "N",
    "matrix",
    "alpha",
    "relation",
    "heights",
    "diagnostics",
    "certified",
)

CSV_COLUMNS = (
    "t0",
    "lambda0",
    "mu0",
    "N",
    "A",
    "B",
    "C",
    "D",
    "a",
    "b",
    "gamma1",
    "gamma2",
    "residual",
    "h_lambda",
    "h_mu",
    "neron_tate",
    "certified",
)

DIGITS_SHOWN = 20


def _complex(value) -> List[str]:
    value = mp.mpc(value)
    return [mp.nstr(value.real, DIGITS_SHOWN), mp.nstr(value.imag, DIGITS_SHOWN)]


def build_header(
    version: str,
    spec: _spec.CurveSpec,
    config: _spec.ScanConfig,
    seed: int,
    override_asymmetry: bool = False,
    **extra: Any,
) -> Dict[str, Any]:
    header = {
        "tool": "isomatrix",
        "version": version,
        "spec": spec.as_dict(),
        "config": config.as_dict(),
        "seed": seed,
        "override_asymmetry": override_asymmetry,
    }
    header.update(extra)
    return header


def diagnostics(finding: _scan.Finding) -> Dict[str, Any]:
    """Empirical ratios against the shapes of the height, period and size bounds (D0 = 1)."""
    d0 = 1
    witness = finding.isogeny
    return {
        "D0": d0,
        "h_lambda_over_D0": finding.heights.h_lambda / d0,
        "h_mu_over_D0": finding.heights.h_mu / d0,
        "abs_tau_over_D0_squared": float(abs(mp.mpc(finding.tau1))) / d0 ** 2,
        "coefficient_size": finding.relation.size,
        "N_over_D0_8": witness.N / d0 ** 8,
        "matrix_height_over_cN10": witness.matrix.height
        / (isogeny_detect.MATRIX_HEIGHT_CONSTANT * witness.N ** 10),
        "cm_discriminant": finding.cm_discriminant,
    }


def finding_record(finding: _scan.Finding) -> Dict[str, Any]:
    witness, relation = finding.isogeny, finding.relation
    values = {
        "t0": rm.fraction_text(finding.t0),
        "lambda0": rm.fraction_text(finding.lambda0),
        "mu0": rm.fraction_text(finding.mu0),
        "N": witness.N,
        "matrix": [witness.A, witness.B, witness.C, witness.D],
        "alpha": _complex(witness.alpha),
        "relation": {
            "a": list(relation.a),
            "b": list(relation.b),
            "gamma1": relation.gamma1,
            "gamma2": relation.gamma2,
            "rho": _complex(relation.rho),
            "residual": mp.nstr(relation.residual, 5),
            "T": relation.T_used,
        },
        "heights": {
            "h_lambda": finding.heights.h_lambda,
            "h_mu": finding.heights.h_mu,
            "neron_tate": list(finding.heights.neron_tate),
        },
        "diagnostics": diagnostics(finding),
        "certified": finding.certified,
    }
    return {key: values[key] for key in FINDING_KEYS}


def _csv_row(record: Dict[str, Any]) -> List[Any]:
    relation, found_heights = record["relation"], record["heights"]
    return [
        record["t0"],
        record["lambda0"],
        record["mu0"],
        record["N"],
        *record["matrix"],
        " ".join(str(c) for c in relation["a"]),
        " ".join(str(c) for c in relation["b"]),
        relation["gamma1"],
        relation["gamma2"],
        relation["residual"],
        found_heights["h_lambda"],
        found_heights["h_mu"],
        " ".join("" if h is None else repr(h) for h in found_heights["neron_tate"]),
        record["certified"],
    ]


def emit_findings(
    findings: Sequence[_scan.Finding],
    fmt: str,
    stream: TextIO,
    header: Optional[Dict[str, Any]] = None,
):
    """Write the header and the findings, ordered by (H1(t0), t0)."""
    ordered = sorted(findings, key=lambda f: f.sort_key)
    records = [finding_record(f) for f in ordered]
    header_line = json.dumps(header or {})

    if fmt == "csv":
        stream.write(f"# {header_line}\n")
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for record in records:
            writer.writerow(_csv_row(record))
        return

    stream.write(header_line + "\n")
    for record in records:
        stream.write(json.dumps(record) + "\n")


def emit_to_string(
    findings: Sequence[_scan.Finding], fmt: str, header: Optional[Dict[str, Any]] = None
) -> str:
    buffer = io.StringIO()
    emit_findings(findings, fmt, buffer, header)
    return buffer.getvalue()


def parse_findings(text: str) -> Tuple[Dict[str, Any], List[Dict[str, Any]]]:
    """Header and finding records of a JSON-lines document."""
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise types.ParseError("empty findings document", 0)
    parsed = []
    for number, line in enumerate(lines):
        try:
            parsed.append(json.loads(line))
        except json.JSONDecodeError as e:
            raise types.ParseError(f"line {number + 1}: {e.msg}", e.pos)
    header, records = parsed[0], parsed[1:]
    for number, record in enumerate(records, start=2):
        if tuple(record) != FINDING_KEYS:
            raise types.ParseError(f"line {number}: unexpected keys {list(record)}")
    return header, records
