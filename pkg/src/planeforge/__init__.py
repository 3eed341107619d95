"""Finite projective planes of prime-power order built from sharply
2-transitive permutation groups, with checkers and small-order searches."""

from .errors import (
    CanonicalFormRequired,
    LimitExceeded,
    NotPrimePower,
    ParseError,
    PermutationError,
    PlaneforgeError,
    PreconditionError,
)
from .field import agl1, make_field, make_field_for_order
from .graph import cycle_cover, pair_group, plane_to_packing
from .group import PermSet, Subgroup, closure, cosets, find_regular_normal, is_regular_normal, is_transitive
from .mols import LatinSquare, MolsSet, are_orthogonal, fundamental_ols, is_latin, mols_from_group
from .perm import Permutation, agreement, compose, fixed_points, from_cycles, identity, inverse, to_cycles
from .plane import (
    Plane,
    base_lines,
    bruck_ryser_excluded,
    build_plane,
    determinantal_lines,
    extract_permutations,
    verify_plane,
)
from .search import search_mols_pair, search_sharp2t_sets, search_transitive_subgroups
from .sharp import check_cycle_conditions, check_observations, check_sharp2t, normalize_coset

__all__ = [
    "CanonicalFormRequired",
    "LatinSquare",
    "LimitExceeded",
    "MolsSet",
    "NotPrimePower",
    "ParseError",
    "PermSet",
    "Permutation",
    "PermutationError",
    "Plane",
    "PlaneforgeError",
    "PreconditionError",
    "Subgroup",
    "agl1",
    "agreement",
    "are_orthogonal",
    "base_lines",
    "bruck_ryser_excluded",
    "build_plane",
    "check_cycle_conditions",
    "check_observations",
    "check_sharp2t",
    "closure",
    "compose",
    "cosets",
    "cycle_cover",
    "determinantal_lines",
    "extract_permutations",
    "find_regular_normal",
    "fixed_points",
    "from_cycles",
    "fundamental_ols",
    "identity",
    "inverse",
    "is_latin",
    "is_regular_normal",
    "is_transitive",
    "make_field",
    "make_field_for_order",
    "mols_from_group",
    "normalize_coset",
    "pair_group",
    "plane_to_packing",
    "search_mols_pair",
    "search_sharp2t_sets",
    "search_transitive_subgroups",
    "to_cycles",
    "verify_plane",
]

__version__ = "0.1.0"
