"""count-zt command module"""

import json
from typing import List

from isomatrix import interfaces
from isomatrix import relation_finder
from isomatrix import types

from . import _abc


class CountZT(_abc.Command):
    """count-zt
    Count how many random log configurations carry a certified relation of size at
    most T, for each T of the grid. Planted samples carry a small relation by
    construction.
    Usage:
        count-zt [--samples=K] [--planted=P] [--points=M] [--t-grid=LIST]

    Options:
        --samples=K     Number of random configurations [default: 20].
        --planted=P     How many of them carry a planted relation [default: 0].
        --points=M      Logs per configuration [default: 2].
        --t-grid=LIST   Comma separated, ascending relation sizes [default: 10,100,1000].
    """  # noqa

    command_name = "count-zt"

    def __init__(self):
        super().__init__()

    def run_impl(
        self,
        options: dict,
        config: interfaces.IConfiguration,
        provider: interfaces.IModularPolynomialProvider,
    ) -> List[str]:
        try:
            grid = [int(t) for t in options["--t-grid"].split(",")]
        except ValueError:
            raise types.ParseError(
                f"'{options['--t-grid']}' is not a list of integers", field="--t-grid"
            )
        ctx = config.precision()
        try:
            samples = relation_finder.synthetic_samples(
                _abc.int_option(options, "--samples"),
                _abc.int_option(options, "--points"),
                _abc.int_option(options, "--planted"),
                config.seed(),
                ctx,
            )
            counts = relation_finder.count_ZT_hits(
                samples, 0, grid, ctx, threads=config.threads()
            )
        except ValueError as e:
            raise types.ValidationError("count-zt arguments", str(e))

        if config.output_format() == "csv":
            return ["T,hits"] + [f"{T},{count}" for T, count in counts]
        return [json.dumps({"T": T, "hits": count}) for T, count in counts]
