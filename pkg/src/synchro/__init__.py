"""Tools for deciding synchronization questions about permutation
groups: complete-mapping search, diagonal-graph colourings, witness
verification and transfer, suborbit and collapsed-adjacency
computations in permutation and matrix representations, and class
algebra structure constants from character tables.
"""

from . import chartab, diagonal, groups, mapping, matrep, orbitals, witness

__version__ = "0.1.0"

__all__ = [
    "chartab",
    "diagonal",
    "groups",
    "mapping",
    "matrep",
    "orbitals",
    "witness",
]
