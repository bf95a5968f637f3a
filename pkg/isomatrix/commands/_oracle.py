"""Oracle command module"""

from typing import List

from isomatrix import interfaces
from isomatrix import search

from . import _abc


class Oracle(_abc.Command):
    """oracle
    Print the integer polynomial in t that vanishes exactly where the fibers of SPEC
    are N-isogenous, and its rational roots up to height H.
    Usage:
        oracle SPEC N [--h1-max=H]

    Options:
        --h1-max=H  Largest root height max(|p|, q) listed [default: 20].
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
        N = _abc.int_option(options, "N")
        h1_max = _abc.int_option(options, "--h1-max")

        phi = provider.get_modular_polynomial(N, force=config.force)
        locus = search.isogeny_locus_oracle(spec, N, phi)
        if locus.is_zero:
            return [f"N = {N}: the fibers are isogenous for every t"]

        roots = search.oracle_parameters(spec, N, h1_max)
        return [
            f"N = {N}: degree {locus.degree()}",
            f"locus: {locus.as_expr()}",
            f"roots with H1 <= {h1_max}: "
            + (", ".join(search.fraction_text(t) for t in roots) or "none"),
        ]
