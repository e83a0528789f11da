"""unitalpack: clique-free color patterns from pencils of Hermitian unitals.

The package builds the projective plane PG(2, q^2) over an exact GF(q^2),
carves its points into a pencil of Hermitian unitals sharing a tangent
line, refines that algebraic partition with seeded random colorings, and
assembles edge-disjoint graphs on the common secants whose cliques are
controlled by the geometry.  A randomized Turanization then removes the
remaining large cliques, and every structural property along the way is
re-verified exhaustively and reported in machine-readable certificates.
Companion modules provide the affine-plane semisaturation coloring and
the recursion-based lower-bound table for clique packing numbers.
"""

from ._version import __version__

__all__ = ["__version__"]
