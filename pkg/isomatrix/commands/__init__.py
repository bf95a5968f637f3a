from ._abc import Command  # noqa F401
from ._check import Check  # noqa F401
from ._count_zt import CountZT  # noqa F401
from ._help import Help  # noqa F401
from ._modpoly import Modpoly  # noqa F401
from ._oracle import Oracle  # noqa F401
from ._scan import Scan  # noqa F401
from ._command_cache import get_command  # noqa F401
