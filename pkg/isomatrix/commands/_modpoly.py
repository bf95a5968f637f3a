from typing import List

from isomatrix import interfaces

from . import _abc


class Modpoly(_abc.Command):
    """modpoly
    Print the modular polynomial of level N, one "ex ey coefficient" line per
    monomial, computing and caching it if needed.
    Usage:
        modpoly N
    """  # noqa

    def __init__(self):
        super().__init__()

    def run_impl(
        self,
        options: dict,
        config: interfaces.IConfiguration,
        provider: interfaces.IModularPolynomialProvider,
    ) -> List[str]:
        N = _abc.int_option(options, "N")
        poly = provider.get_modular_polynomial(N, force=config.force)
        return poly.to_text().rstrip("\n").split("\n")
