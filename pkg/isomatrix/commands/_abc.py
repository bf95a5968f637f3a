import abc
import pathlib
from typing import List

import docopt  # type: ignore

from isomatrix import interfaces
from isomatrix import search
from isomatrix import types


COMMAND_MODULE_VERSION = "0.3"


class Command(abc.ABC):
    """Base class for all isomatrix commands."""

    # name used on the command line, when it is not the lowercase class name
    command_name = ""

    def __init__(self):
        pass

    @property
    def version(self) -> str:
        """Return the version of a specific command."""
        return COMMAND_MODULE_VERSION

    def run_impl(
        self,
        options: dict,
        config: interfaces.IConfiguration,
        provider: interfaces.IModularPolynomialProvider,
    ) -> List[str]:
        """The actual run implementation for each command."""
        raise NotImplementedError

    def run(
        self,
        cfg: interfaces.IConfiguration,
        provider: interfaces.IModularPolynomialProvider,
    ) -> List[str]:
        """Run the command, given the command name and configuration."""
        return self.run_impl(
            options=docopt.docopt(
                self.__doc__, argv=cfg.command_args(), version=self.version
            ),
            config=cfg,
            provider=provider,
        )


def load_spec(path: str) -> search.CurveSpec:
    """Read and validate the curve spec document at path."""
    try:
        document = pathlib.Path(path).read_text()
    except OSError as e:
        raise types.ParseError(f"cannot read {path}: {e.strerror}", field="SPEC")
    return search.parse_spec(document)


def int_option(options: dict, name: str) -> int:
    try:
        return int(options[name])
    except (TypeError, ValueError):
        raise types.ParseError(f"'{options[name]}' is not an integer", field=name)


def float_option(options: dict, name: str) -> float:
    try:
        return float(options[name])
    except (TypeError, ValueError):
        raise types.ParseError(f"'{options[name]}' is not a number", field=name)


def scan_config(options: dict, config: interfaces.IConfiguration) -> search.ScanConfig:
    return search.ScanConfig(
        h1_max=int_option(options, "--h1-max"),
        n_max=int_option(options, "--n-max"),
        t_relation=int_option(options, "--t-relation"),
        precision=config.precision(),
        exclusion_radius=float_option(options, "--exclusion-radius"),
    )
