"""Exact verification of the multiloop Coulomb branch / Slodowy slice identities."""

from .algebra import Coefficient, Localized, NotDivisible, Polynomial, Ring, exact_divide, substitute

__all__ = ["Coefficient", "Localized", "NotDivisible", "Polynomial", "Ring", "exact_divide", "substitute"]
__version__ = "0.1.0"
