"""Exact toric computation of G-Hilbert schemes, tautological bundles and
GIT chamber decompositions for finite abelian subgroups of SL(3,C).

The library enumerates Nakamura G-graphs to build the G-Hilbert scheme fan,
marks it by Reid's recipe, carries the tautological line bundles through
wall crossings of the stability space, classifies walls (type 0 / I / III),
and enumerates the full chamber graph, checking that every flip-reachable
crepant resolution of C^3/G is realised by a chamber.
"""

from .groups import Character, GroupSpec, parse_group

__all__ = ["Character", "GroupSpec", "parse_group"]
__version__ = "0.1.0"
