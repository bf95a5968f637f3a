"""Interface for configuration values used by the isomatrix program."""

import abc
import pathlib
from typing import List, Optional

from isomatrix import types


class IConfiguration(abc.ABC):
    @abc.abstractmethod
    def command(self) -> Optional[str]:
        raise NotImplementedError

    @abc.abstractmethod
    def command_args(self) -> List[str]:
        raise NotImplementedError

    @abc.abstractmethod
    def output_format(self) -> str:
        raise NotImplementedError

    @abc.abstractmethod
    def output_file(self) -> Optional[pathlib.Path]:
        raise NotImplementedError

    @abc.abstractmethod
    def digits(self) -> int:
        """Working precision in decimal digits."""
        raise NotImplementedError

    @abc.abstractmethod
    def certify_digits(self) -> int:
        raise NotImplementedError

    @abc.abstractmethod
    def precision(self) -> types.PrecisionContext:
        raise NotImplementedError

    @abc.abstractmethod
    def threads(self) -> int:
        raise NotImplementedError

    @abc.abstractmethod
    def seed(self) -> int:
        raise NotImplementedError

    @abc.abstractmethod
    def config_path(self) -> pathlib.Path:
        """Return the directory where we should store this user's configuration data."""
        raise NotImplementedError

    @abc.abstractmethod
    def cache_path(self) -> pathlib.Path:
        """Return the directory where computed modular polynomials are kept."""
        raise NotImplementedError

    @property
    @abc.abstractmethod
    def force(self) -> bool:
        """Did the user ask to ignore the cache?"""
        raise NotImplementedError

    @property
    @abc.abstractmethod
    def verbose(self) -> bool:
        raise NotImplementedError
