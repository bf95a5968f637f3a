"""Scan command module"""

from typing import List

from isomatrix import ISOMATRIX_VERSION
from isomatrix import interfaces
from isomatrix import search

from . import _abc


class Scan(_abc.Command):
    """scan
    Scan every rational parameter of SPEC up to height H for certified findings:
    fibers that are N-isogenous with N <= n-max and whose sections satisfy a
    relation with coefficients at most T.
    Usage:
        scan SPEC [--h1-max=H] [--n-max=N] [--t-relation=T]
                  [--exclusion-radius=R] [--override-asymmetry] [--skip-genericity]

    Options:
        --h1-max=H              Largest parameter height max(|p|, q) [default: 20].
        --n-max=N               Largest isogeny degree looked for [default: 3].
        --t-relation=T          Largest relation coefficient looked for [default: 10].
        --exclusion-radius=R    Skip fibers with lambda or mu this close to 0 or 1 [default: 1e-6].
        --override-asymmetry    Scan even when deg X equals deg Y.
        --skip-genericity       Do not check that random fibers are generic.
    """  # noqa

    def __init__(self):
        super().__init__()

    def run_impl(
        self,
        options: dict,
        config: interfaces.IConfiguration,
        provider: interfaces.IModularPolynomialProvider,
    ) -> List[str]:
        spec = _abc.load_spec(options["SPEC"])
        scan_config = _abc.scan_config(options, config)
        override = bool(options["--override-asymmetry"])

        for N in range(1, scan_config.n_max + 1):
            provider.get_modular_polynomial(N, force=config.force)

        result = search.scan(
            spec,
            scan_config,
            threads=config.threads(),
            override_asymmetry=override,
            seed=config.seed(),
            check_genericity=not options["--skip-genericity"],
        )
        header = search.build_header(
            ISOMATRIX_VERSION,
            spec,
            scan_config,
            config.seed(),
            override,
            asymmetry=result.asymmetry._asdict(),
            scanned=result.scanned,
            hits={
                str(N): [search.fraction_text(t) for t in ts]
                for N, ts in result.hits.items()
            },
            skipped=[
                {"t0": search.fraction_text(s.t0), "reason": s.reason}
                for s in result.skipped
            ],
        )
        text = search.emit_to_string(result.findings, config.output_format(), header)
        return text.rstrip("\n").split("\n")
