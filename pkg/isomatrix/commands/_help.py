from typing import List

import isomatrix.doc as appdoc
from isomatrix import interfaces

from . import _abc


class Help(_abc.Command):
    """ Show help for all commands, or for the one named.
        Usage: help [CMD]
    """

    def __init__(self):
        super().__init__()

    def run_impl(
        self,
        options: dict,
        config: interfaces.IConfiguration,
        provider: interfaces.IModularPolynomialProvider,
    ) -> List[str]:
        from ._command_cache import get_command

        if options["CMD"]:
            cmd = get_command(options["CMD"])
            if cmd is None:
                return [f"Unknown command '{options['CMD']}'."]
            return (cmd.__doc__ or "").split("\n")
        return appdoc.__doc__.split("\n")
