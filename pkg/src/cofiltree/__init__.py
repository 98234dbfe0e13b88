"""Order-minimal spanning trees, cofiltrations of spanning trees and upper
set precovers of 1-cycle persistence modules."""

from .chains import GF, QQ, ZZ, Chain, Ring, boundary, chain_add, chain_scale, leading_simplex
from .complex import (
    OrderedSimplicialComplex,
    Ordering,
    SimplicialMap,
    apply_simplicial_map,
    complex_from_simplices,
    lex_compare,
    n_difference,
    skeleton,
)
from .fileformat import format_filtration, parse_filtration, read_filtration
from .oracle import (
    HomologySummary,
    homology,
    image_submodule_equal,
    smith_normal_form,
)
from .persistence import (
    Filtration,
    PersistentSet,
    Precover,
    SpanningCofiltration,
    check_tau1_functoriality,
    cofiltration_of_spanning_trees,
    colimit_persistent_set,
    filtration_at,
    is_cofiltration,
    precover,
    precover_map_and_check,
    representative_persistent_set,
    subfiltration_of_spanning_trees,
    upper_set_decompose,
)
from .poset import Poset, UpperSet, grid_poset, is_upper_set, poset_from_covers
from .spanning import (
    NSpanningComplex,
    SpanningTree,
    cycle_basis_rel_tree,
    edge_exchange_candidates,
    is_spanning_tree,
    n_spanning_complex,
    order_minimal_spanning_tree,
    tree_path_chain,
)

__version__ = "0.1.0"
