"""Nim-values of the generating achievement game on finite groups.

Two players alternately pick previously-unselected elements of a finite
group; whoever first makes the chosen set generate the group wins.  This
package computes the Sprague-Grundy value of that game through a
structure-class/mex engine over the subgroup lattice, validates it against
a brute-force game-tree oracle on small groups, and cross-checks a
closed-form classification for groups with a Sylow 2-direct factor.
"""

from .achievement import (
    DeficiencyClassLabel,
    GameReport,
    StructureClass,
    TypeTriple,
    build_structure_classes,
    compute_types,
    deficiency,
    deficiency_map,
    deficiency_of_set,
    expected_even_type,
    expected_odd_type,
    export_structure_digraph,
    label_deficiency_classes,
    mex,
    nim_of_game,
    report_to_dict,
    report_to_json,
)
from .classifier import (
    Decomposition,
    Prediction,
    TheoremCheck,
    decompose_sylow2,
    is_nilpotent,
    predict_nim,
    verify_theorem,
)
from .exprs import (
    CatalogEntry,
    CayleyFile,
    Cyclic,
    ExprSyntaxError,
    GroupExpr,
    Named,
    Perm,
    Power,
    Product,
    Trivial,
    build_group,
    default_catalog_path,
    load_catalog,
    parse_catalog,
    parse_group_expr,
    product_split,
    render_expr,
)
from .groups import (
    DEFAULT_MAX_ORDER,
    CayleyFormatError,
    ElementSet,
    GroupTable,
    GroupValidationError,
    ResourceLimitError,
    closure_mask,
    cyclic_group,
    direct_product,
    element_order,
    generated_subgroup,
    group_from_cayley_file,
    group_from_permutations,
    min_generating_size,
    relabel,
    subgroup_table,
)
from .lattice import (
    SubgroupFamily,
    all_subgroups,
    closure_ceil,
    intersection_family,
    maximal_subgroups,
)
from .oracle import (
    DEFAULT_ORACLE_CAP,
    GrundyMemo,
    InvarianceReport,
    brute_deficiency,
    grundy,
    verify_position_invariance,
)

__version__ = "0.1.0"
