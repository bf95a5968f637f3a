"""Check command module"""

from typing import List

from isomatrix import interfaces
from isomatrix import search

from . import _abc


class Check(_abc.Command):
    """check
    Report the asymmetry and genericity checks a scan of SPEC relies on.
    Usage:
        check SPEC [--n-max=N] [--t-relation=T] [--exclusion-radius=R]

    Options:
        --n-max=N               Largest isogeny degree looked for [default: 3].
        --t-relation=T          Largest relation coefficient looked for [default: 10].
        --exclusion-radius=R    Treat lambda or mu this close to 0 or 1 as degenerate [default: 1e-6].
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
        options["--h1-max"] = "0"
        scan_config = _abc.scan_config(options, config)

        asymmetry = search.asymmetry_check(spec, config.seed())
        results = [
            f"asymmetry: deg X = {asymmetry.degX}, deg Y = {asymmetry.degY}, "
            + ("asymmetric" if asymmetry.asymmetric else "SYMMETRIC")
            + (
                f" (parametrization of degree {asymmetry.fibration} onto its image)"
                if asymmetry.fibration > 1
                else ""
            )
        ]
        report = search.genericity_check(spec, scan_config, config.seed())
        results.append("genericity: " + ("passed" if report.passed else "FAILED"))
        results.extend(f"  {line}" for line in report.lines())
        return results
