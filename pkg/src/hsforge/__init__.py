"""Coset partitions of free groups: automata, transition groups, loop graphs,
and residue-class covers of the integers, with checkers for the sufficient
conditions that force a repeated index."""

from .words import (
    Letter,
    Word,
    WordError,
    cyclic_reduce,
    identity,
    inverse,
    multiply,
    parse_word,
    power,
    word,
)
from .schreier import (
    CosetTable,
    InfiniteIndex,
    StallingsGraph,
    WFunctionalGraph,
    canonicalize,
    coset_of,
    fold_from_generators,
    order_at,
    table_from_generators,
    trace,
    transversal,
    try_complete,
    visited_set,
    w_graph,
    word_step,
)
from .perm import (
    CapExceeded,
    PermGroup,
    Permutation,
    cycle_type_census,
    eval_word,
    has_k_cycle_at,
    max_cycle_length,
    transition_group,
)
from .partition import (
    CosetPartition,
    CosetSpec,
    EmptyWord,
    NotAPartition,
    StateCapExceeded,
    act,
    big_n,
    coset_partition,
    intersection_conditions,
    lift_partition,
    multiplicity,
    normal_core,
    o_max_and_sharp,
    orbit_size_under,
    order_rel,
    product,
    rho,
    separating_subgroup,
    validate,
)
from .hsgraph import HSColoredGraph, HSLoop, build_hs_graph, fiber_loop_count, loop_z_partition
from .zcover import (
    CountViolation,
    InvalidPartition,
    SpacingViolation,
    ZClass,
    ZPartition,
    colored_loop_partition,
    erdos_checks,
    format_zpartition,
    parse_zpartition,
    split_class,
    validate_z,
    zpartition,
)
from .theorems import (
    Analysis,
    TheoremReport,
    analyze,
    check_cycle_bounds,
    check_full_cycle,
    check_intersections,
    check_neighborhood,
    loop_consistency,
)
from .files import FileFormatError, load_partition, parse_partition_file

__version__ = "0.1.0"
