"""Sign of the permutation of fourth-power residues induced by a primitive root,
with the Jacobsthal-sum and counting identities it is built from."""

from .arith import PrimeContext, QuarticClass, decompose, legendre, quartic_symbol
from .checks import CheckRecord, verify_prime

__all__ = [
    "CheckRecord",
    "PrimeContext",
    "QuarticClass",
    "decompose",
    "legendre",
    "quartic_symbol",
    "verify_prime",
]
__version__ = "0.1.0"
