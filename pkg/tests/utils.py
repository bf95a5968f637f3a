import json
import pathlib
from typing import Dict, List, Optional

from isomatrix import interfaces, isogeny_detect, types

# lambda = t and a quadratic mu with mu(4) = 8/9; E_4 and E_{8/9} are 2-isogenous
# and the section x = t - 4 is the 2-torsion point (0, 0) at t = 4
PLANTED_SPEC = {
    "name": "planted-2-isogeny",
    "lambda": "t",
    "mu": "8/9 + (t - 4)^2",
    "p_sections": [{"x": "t - 4", "sign": "+"}],
}

SQUARE_SPEC = {"name": "square", "lambda": "t", "mu": "t^2"}

# J(1 - t) = J(t), so the image curve is the diagonal
SYMMETRIC_SPEC = {"name": "symmetric", "lambda": "t", "mu": "1 - t"}

CONSTANT_CM_SPEC = {
    "name": "constant-cm",
    "lambda": "t",
    "mu": "1/2",
    "p_sections": [{"x": "2"}],
}


def spec_document(spec: Dict) -> str:
    return json.dumps(spec)


def write_spec(directory: pathlib.Path, spec: Dict) -> pathlib.Path:
    path = directory.joinpath(f"{spec['name']}.json")
    path.write_text(spec_document(spec))
    return path


class Config(interfaces.IConfiguration):
    """Mocked out configuration implementation for testing purposes."""

    cache_path_val = pathlib.Path().cwd()
    certify_digits_val = 80
    command_args_val: List[str] = []
    command_val = None
    config_path_val = pathlib.Path().cwd()
    digits_val = 40
    force_flag = False
    output_file_val: Optional[pathlib.Path] = None
    output_format_val = "json"
    seed_val = 0
    threads_val = 1
    verbose_flag = False

    def command(self) -> Optional[str]:
        return self.command_val

    def command_args(self) -> List[str]:
        return self.command_args_val

    def output_file(self) -> Optional[pathlib.Path]:
        return self.output_file_val

    def output_format(self) -> str:
        return self.output_format_val

    def digits(self) -> int:
        return self.digits_val

    def certify_digits(self) -> int:
        return self.certify_digits_val

    def precision(self) -> types.PrecisionContext:
        return types.PrecisionContext(self.digits_val, self.certify_digits_val)

    def threads(self) -> int:
        return self.threads_val

    def seed(self) -> int:
        return self.seed_val

    def cache_path(self) -> pathlib.Path:
        return self.cache_path_val

    def config_path(self) -> pathlib.Path:
        return self.config_path_val

    @property
    def force(self) -> bool:
        return self.force_flag

    @property
    def verbose(self) -> bool:
        return self.verbose_flag


class RecordingProvider(interfaces.IModularPolynomialProvider):
    """Mock provider that hands out the library's polynomials and remembers the requests."""

    def __init__(self):
        self.requested: List[int] = []
        self.forced: List[bool] = []

    def get_cached_modular_polynomial(
        self, N: int
    ) -> Optional[isogeny_detect.ModularPolynomial]:
        return isogeny_detect.cached_modular_polynomials().get(N)

    def get_modular_polynomial(
        self, N: int, force: bool = False
    ) -> isogeny_detect.ModularPolynomial:
        self.requested.append(N)
        self.forced.append(force)
        return isogeny_detect.modular_polynomial(N)
