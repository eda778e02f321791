"""Distance magic and p-distance magic graph labellings: verification, search,
spectral characterisations and automorphism orbits."""
from .graph import (
    Graph,
    GraphError,
    construct,
    from_edge_list,
    parse_graph6,
    to_graph6,
)
from .labeling import (
    InvalidLabelingError,
    Labeling,
    MagicCertificate,
    ModularLabeling,
    WeightMismatch,
    magic_constant_bound,
    modulo_regularity,
    reduce_mod_p,
    shift_labeling,
    verify_distance_magic,
    verify_p_distance_magic,
    weights,
)
from .search import (
    SearchConfig,
    census_dm_graphs,
    count_dm_labelings,
    crt_combine,
    find_dm_labelings,
    find_p_dm_labelings,
)
from .automorphism import automorphisms, canonical_form, act, labeling_orbits, Permutation

__version__ = "0.1.0"
