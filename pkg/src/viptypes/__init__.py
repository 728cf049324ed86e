"""Finite combinatorics of binary-tree types, vip orders, and graph codings."""

from .nodes import (
    EQ,
    GT,
    LT,
    NodeError,
    SetProfile,
    density_witness,
    lex_lt,
    meet,
    meet_closure,
    passing_number,
    profile,
    q_cmp,
)
from .collapse import EmbeddingWitness, SimilarityTree, clp, induced_order, is_strong_embedding, same_ordered_type
from .viporders import (
    LevelOrder,
    PreVipOrder,
    count_vip_orders,
    enumerate_vip_orders,
    is_pre_vip,
    is_vip,
    make_pre_vip,
)
from .census import (
    AltPerm,
    CensusReport,
    alternating_permutations,
    bounds_check,
    census,
    enumerate_types,
    level_size_formulas,
    level_sizes,
    perm_of_type,
    tangent,
    type_of_perm,
)
from .diagonal import (
    DiagMap,
    GreedyTransverseRule,
    has_level_harmony,
    is_pnp,
    is_polite,
    pnp_diagonalize,
    sparse_diagonalize,
    verify_diag_contract,
)
from .rado import (
    Graph,
    bit_graph,
    embedding_to_pnp,
    extension_witness,
    increasing_embeddings,
    pnp_to_embedding,
    random_graph,
    tree_embed,
)
from .partition import (
    Coloring,
    OrderedType,
    RealizationAudit,
    classify_graph,
    classify_linear,
    graph_scan_audit,
    linear_scan_audit,
    realize_type,
    realized_colors,
)

__all__ = [name for name in dir() if not name.startswith("_")]
