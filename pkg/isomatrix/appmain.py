"""Application entry point via the `run` method of the Isomatrix class."""

import logging
from typing import Dict, List, Set

from . import commands
from . import interfaces
from . import isogeny_detect
from . import types

logger = logging.getLogger(__name__)


class Isomatrix(interfaces.IModularPolynomialProvider):

    ModularPolynomialFilePattern = "phi_*.txt"

    def __init__(self, conf: interfaces.IConfiguration):
        self.config = conf
        self._polynomials: Dict[int, isogeny_detect.ModularPolynomial] = {}
        self._dirty: Set[int] = set()

        if conf.force:
            return
        cache_dir = conf.cache_path()
        if not cache_dir.is_dir():
            logger.info(
                "No modular polynomial cache at %s, will compute on demand.", cache_dir
            )
            return
        for cached in sorted(cache_dir.glob(self.ModularPolynomialFilePattern)):
            try:
                poly = self._load_modular_polynomial(cached.read_text())
            except types.IsomatrixError as e:
                logger.warning("Ignoring cache file %s: %s", cached, e)
                continue
            self._polynomials[poly.N] = poly
            isogeny_detect.install_modular_polynomial(poly)

    @classmethod
    def cache_file_name(cls, N: int) -> str:
        return cls.ModularPolynomialFilePattern.replace("*", str(N))

    def _load_modular_polynomial(self, text: str) -> isogeny_detect.ModularPolynomial:
        return isogeny_detect.ModularPolynomial.from_text(text)

    def _store_modular_polynomial(self, poly: isogeny_detect.ModularPolynomial) -> str:
        return poly.to_text()

    def get_cached_modular_polynomial(self, N: int):
        """Return Phi_N if it was loaded from disk or computed earlier in this run."""
        return self._polynomials.get(N)

    def get_modular_polynomial(
        self, N: int, force: bool = False
    ) -> isogeny_detect.ModularPolynomial:
        """Return Phi_N, computing it when it is not cached or when forced."""
        poly = None
        if not force:
            poly = self.get_cached_modular_polynomial(N)

        if poly is None:
            try:
                poly = isogeny_detect.modular_polynomial(
                    N, self.config.precision(), force=force
                )
            except ValueError as e:
                raise types.ValidationError("N <= N_cap", str(e))
            self._polynomials[N] = poly
            self._dirty.add(N)

        return poly

    def _do_exit(self):
        """Store every modular polynomial computed during this run."""
        if not self._dirty:
            return

        self.config.cache_path().mkdir(parents=True, exist_ok=True)
        for N in sorted(self._dirty):
            out_file = self.config.cache_path().joinpath(self.cache_file_name(N))
            with open(out_file, "w") as out_poly_file:
                out_poly_file.write(
                    self._store_modular_polynomial(self._polynomials[N])
                )
        self._dirty.clear()

    def _write_results(self, results: List[str]):
        output_file = self.config.output_file()
        if output_file is None:
            print(*results, sep="\n")
            return
        with open(output_file, "w") as out:
            out.write("\n".join(results) + "\n")

    def run(self):
        if self.config.command() and self.config.command() != "":
            cmd = commands.get_command(self.config.command())

            if cmd is None:
                print(
                    f"""Unknown command '{self.config.command()}'.
                    Use 'help' to discover valid commands and 'help <cmd>' for usage."""
                )
            else:
                try:
                    self._write_results(cmd.run(self.config, self))

                except types.IsomatrixExit:
                    pass

                except types.IsomatrixError as e:
                    logger.debug("command failed", exc_info=True)
                    print(f"{type(e).__name__}: {e}")

        self._do_exit()
