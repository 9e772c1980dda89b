"""Partition calculus for free splittings relative to a rose.

Modules:

* :mod:`freesplit.partitions` - directions, partitions, pairwise predicates
* :mod:`freesplit.blowup` - graphs of groups, blow-ups, boundary shapes
* :mod:`freesplit.freegroup` - words, automorphisms, Whitehead machinery
* :mod:`freesplit.complexes` - splitting graphs, cliques, the rose graph
* :mod:`freesplit.verify` - runnable verifiers with witness reports
* :mod:`freesplit.cli` - command-line driver
"""

from .partitions import (
    Direction,
    Partition,
    SplittingClass,
    CornerSets,
    all_directions,
    aligned_sides,
    class_of,
    compatible,
    corner_sets,
    crosses,
    enumerate_ideal_edges,
    enumerate_splitting_classes,
    is_cagey,
    is_ideal,
    is_thick,
    petal_class,
    rose_compatible,
)
from .blowup import (
    BoundaryType,
    GraphOfGroups,
    IncompatibleFamilyError,
    blow_up,
    boundary_splitting,
    classify_shape,
)
from .freegroup import (
    CyclicWord,
    FreeAutomorphism,
    WhiteheadGraph,
    Word,
    connected_no_cutvertex,
    conjugate_into_factor,
    enumerate_factor_product,
    is_conjugate,
    is_simple,
    nielsen,
    twist,
    whitehead_automorphism,
    whitehead_graph,
    whitehead_minimize,
)
from .complexes import (
    KLocalGraph,
    RoseVertex,
    SplittingGraph,
    build_star_graph,
    cagey_by_cliques,
    enumerate_cliques,
    k_graph_local,
    maximal_cliques,
    rose_vertices,
)
from .verify import VerificationReport, run_battery, run_verifier

__version__ = "0.1.0"
