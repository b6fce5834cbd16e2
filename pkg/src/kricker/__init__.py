"""kricker: exact symbolic computation of the refined Kricker invariant.

The pipeline goes from a surgery-presentation tangle program to

  * the winding matrix / Blanchfield presentation (combinatorial side),
  * truncated Kontsevich-functor values and their Gaussian splitting,
  * the operation omega, the invariant z_tilde, and its projection
    psi . z_tilde recovering the Kricker invariant.

All arithmetic is exact over Q.
"""

from .exactalg import LaurentPoly, RationalFraction, PolyMatrix, t_power

__all__ = ["LaurentPoly", "RationalFraction", "PolyMatrix", "t_power"]
__version__ = "0.1.0"
