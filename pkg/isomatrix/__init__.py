"""isomatrix: isogenies, heights and integer relations on the Legendre family."""

ISOMATRIX_VERSION = "0.3"
