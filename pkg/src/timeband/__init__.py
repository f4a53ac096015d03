"""timeband: time-and-band limiting for Darboux-deformed Bessel operators.

The package has an exact-arithmetic core (exactalg, darboux, kdvflows,
besselalg) that verifies every closed-form identity symbolically, and a
floating-point layer (besselnum, kernels, spectra) for the integral-operator
spectra and the stability experiments.
"""

__version__ = "0.1.0"

from . import errors  # noqa: F401

__all__ = ["errors", "__version__"]
