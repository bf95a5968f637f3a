"""Parametrized curve specs, hypothesis checks, the parameter scan and its oracle."""

from ._emit import (  # noqa F401
    CSV_COLUMNS,
    FINDING_KEYS,
    build_header,
    emit_findings,
    emit_to_string,
    finding_record,
    parse_findings,
)
from ._hypotheses import (  # noqa F401
    AsymmetryReport,
    GenericityReport,
    SampleCheck,
    asymmetry_check,
    fibration_degree,
    genericity_check,
)
from ._oracle import isogeny_locus_oracle, oracle_parameters  # noqa F401
from ._rational_map import (  # noqa F401
    RationalMap,
    fraction_text,
    integer_coefficients,
    j_composed,
    parse_fraction,
    parse_rational_function,
    rational_roots,
)
from ._scan import (  # noqa F401
    Finding,
    FindingHeights,
    ScanResult,
    SkipEntry,
    enumerate_parameters,
    h1,
    scan,
)
from ._spec import CurveSpec, ScanConfig, Section, parse_spec  # noqa F401
