import functools
from typing import Dict, Optional

from ._abc import Command  # noqa F401
from ._check import Check
from ._count_zt import CountZT
from ._help import Help
from ._modpoly import Modpoly
from ._oracle import Oracle
from ._scan import Scan


def get_command(command: str) -> Optional[Command]:
    """The command registered under this name, or None for an unknown one."""
    return _mapping().get(command.lower())


@functools.lru_cache()
def _mapping() -> Dict[str, Command]:
    # one shared instance per command, keyed by its command-line name
    return {
        (cls.command_name or cls.__name__.lower()): cls()
        for cls in (Check, CountZT, Help, Modpoly, Oracle, Scan)
    }
