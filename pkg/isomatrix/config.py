"""Configuration values used during the runtime of isomatrix."""

import enum
import os
import pathlib
from typing import List, Optional

from . import interfaces
from . import types


class SupportedOutputTypes(enum.Enum):
    JSON = "json"
    CSV = "csv"


DIGITS_ENV_VAR_NAME = "ISOMATRIX_DIGITS"
DIGITS_DOTFILE_NAME = ".digits"
DEFAULT_DIGITS = 64


class IsomatrixConfig(interfaces.IConfiguration):
    def __init__(self, args: dict):
        self.args = args
        self._digits: Optional[int] = None

    def command(self) -> Optional[str]:
        return self.args["<cmd>"]

    def command_args(self) -> List[str]:
        return self.args["<args>"] or []

    def output_format(self) -> str:
        for ot in SupportedOutputTypes:
            if ot.value == self.args["--format"]:
                return ot.value
        return SupportedOutputTypes.JSON.value

    def output_file(self) -> Optional[pathlib.Path]:
        if not self.args["--output-file"]:
            return None
        return pathlib.Path(self.args["--output-file"])

    @property
    def force(self) -> bool:
        return bool(self.args["--force"])

    @property
    def verbose(self) -> bool:
        return bool(self.args["--verbose"])

    def digits(self) -> int:
        """Get the working precision from the command line, environment variable, or dotfile."""
        if self._digits is None:
            self._digits = self._get_digits(self.args["--digits"])
        return self._digits

    def certify_digits(self) -> int:
        value = self.args["--certify-digits"]
        return int(value) if value else 2 * self.digits()

    def precision(self) -> types.PrecisionContext:
        try:
            return types.PrecisionContext(self.digits(), self.certify_digits())
        except ValueError as e:
            raise types.ValidationError("precision", str(e))

    def threads(self) -> int:
        return max(1, int(self.args["--threads"] or 1))

    def seed(self) -> int:
        return int(self.args["--seed"] or 0)

    def config_path(self) -> pathlib.Path:
        """Return the directory where we should store this user's configuration data."""
        return pathlib.Path.home().joinpath(".isomatrix/")

    def cache_path(self) -> pathlib.Path:
        """Return the directory where we should store this user's cached data."""
        return self.config_path().joinpath("cache")

    def _get_digits(self, cmdline_digits: Optional[str] = None) -> int:
        """Return the working precision, falling back to DEFAULT_DIGITS."""

        if cmdline_digits is None or cmdline_digits == "":
            cmdline_digits = os.getenv(DIGITS_ENV_VAR_NAME)

        if cmdline_digits is None or cmdline_digits == "":
            chk_file = self.config_path().joinpath(DIGITS_DOTFILE_NAME)
            if chk_file.is_file():
                with open(chk_file, "r") as f:
                    cmdline_digits = f.readline().strip()

        try:
            return int(cmdline_digits) if cmdline_digits else DEFAULT_DIGITS
        except ValueError:
            raise types.ParseError(
                f"'{cmdline_digits}' is not a digit count", field="digits"
            )
