"""Edge-disjoint T-path packing in inner-Eulerian grafts, with cut certificates."""
from .errors import *  # noqa: F401,F403
from .euler import PartitionPiece, cycle_tpath_partition, is_inner_eulerian, odd_vertex
from .graft import (
    ContractionFamily,
    Graft,
    build_graft,
    contract,
    d,
    delete_edges,
    delta,
    make_family,
    restrict,
    split_off,
)
from .linkage import (
    BoundarySystem,
    JokerFamily,
    is_linked,
    joker_family,
    lift,
    linkability_condition,
)
from .menger import (
    Cut,
    Path,
    PathSystem,
    augment,
    cut_leq,
    extreme_cuts,
    is_min_cut,
    lambda_,
    max_path_system,
    pym_merge,
    splice,
    tight_cut_through,
)
from .packing import (
    Certificate,
    ExtractionState,
    extract_tpath,
    lovcher_certificate,
    perfect_linkage,
    rest_cycle_coverable_linkage,
    survives_two_deletions,
)
from .toolkit import (
    GenParams,
    VerifyReport,
    XorShift64Star,
    brute_force_max_packing,
    enumerate_tpaths,
    generate_inner_eulerian,
    minimax_value,
    verify_certificate,
    verify_paths,
)

__version__ = "0.1.0"
