"""Brauer tree algebras, their 2-term tilting complexes and the associated
simplicial complexes, g-polytopes, mutation posets and biCambrian lattices."""

from .tree import BrauerTree, enumerate_plane_trees, kauer_move, line_tree, star_tree
from .algebra import BrauerTreeAlgebra, brauer_quiver, cartan_matrix
from .walks import SignedWalk, enumerate_signed_walks, g_vector
from .simplicial import build_complex, formula_f, formula_h, f_to_h

__all__ = [
    "BrauerTree",
    "BrauerTreeAlgebra",
    "SignedWalk",
    "brauer_quiver",
    "build_complex",
    "cartan_matrix",
    "enumerate_plane_trees",
    "enumerate_signed_walks",
    "f_to_h",
    "formula_f",
    "formula_h",
    "g_vector",
    "kauer_move",
    "line_tree",
    "star_tree",
]

__version__ = "0.1.0"
