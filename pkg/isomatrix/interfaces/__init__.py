from ._configuration import IConfiguration  # noqa F401
from ._modpoly_provider import IModularPolynomialProvider  # noqa F401
