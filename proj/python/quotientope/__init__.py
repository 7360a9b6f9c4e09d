"""Lattice congruences of the weak order on S_n.

Thin python surface over the C++ core: congruences from fence diagrams or
well-behaved vincular pattern sets, their equivalence classes, Hamilton paths
on quotient graphs via greedy minimal jumps, and the counting results for
regular / vertex-transitive / non-isomorphic quotient graphs.
"""

from quotientope._core import *  # noqa: F401,F403
from quotientope._core import __version__  # noqa: F401
