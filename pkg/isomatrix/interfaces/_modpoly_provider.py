import abc
from typing import Optional

from isomatrix import isogeny_detect


class IModularPolynomialProvider(abc.ABC):
    """Implementation of a class that hands out modular polynomials Phi_N."""

    def get_cached_modular_polynomial(
        self, N: int
    ) -> Optional[isogeny_detect.ModularPolynomial]:
        """Return Phi_N if it was loaded from disk or computed earlier in this run."""
        raise NotImplementedError

    def get_modular_polynomial(
        self, N: int, force: bool = False
    ) -> isogeny_detect.ModularPolynomial:
        """Return Phi_N, computing it when it is not cached or when forced."""
        raise NotImplementedError
