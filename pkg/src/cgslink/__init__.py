"""Exact linking numbers and Conway-Gordon-Sachs identities for spatial K_n."""

__version__ = "0.1.0"

from .cycles import (
    CyclePair,
    CycleSpaceVector,
    OrientedCycle,
    cycle_space_vector,
    enumerate_cycles,
    enumerate_disjoint_pairs,
    subgraph_cycles,
)
from .generate import moment_curve_scene, random_scene, threaded_loop_scene
from .geometry import Point3, ProjectionFrame, Segment3, orientation3d, projected_crossing, segments_intersect_3d
from .linking import CrossingTable, Loop, build_crossing_table, choose_frame, gauss_estimate, linking_number
from .scene import SpatialScene, ValidityError, load, save, validate
from .theorems import (
    VerificationReport,
    find_nonsplit_witness,
    sum_lk_squared,
    sum_lk_squared_loop,
    verify_congruence,
    verify_factorial_chain,
    verify_filtration_identity,
    verify_hamiltonian_parity,
    verify_loop_lemma,
    verify_pairing_decomposition,
    verify_partition_sum,
    verify_subdivision_identity,
    verify_theorem_1,
)

__all__ = [
    "CrossingTable",
    "CyclePair",
    "CycleSpaceVector",
    "Loop",
    "OrientedCycle",
    "Point3",
    "ProjectionFrame",
    "Segment3",
    "SpatialScene",
    "ValidityError",
    "VerificationReport",
    "build_crossing_table",
    "choose_frame",
    "cycle_space_vector",
    "enumerate_cycles",
    "enumerate_disjoint_pairs",
    "find_nonsplit_witness",
    "gauss_estimate",
    "linking_number",
    "load",
    "moment_curve_scene",
    "orientation3d",
    "projected_crossing",
    "random_scene",
    "save",
    "segments_intersect_3d",
    "subgraph_cycles",
    "sum_lk_squared",
    "sum_lk_squared_loop",
    "threaded_loop_scene",
    "validate",
    "verify_congruence",
    "verify_factorial_chain",
    "verify_filtration_identity",
    "verify_hamiltonian_parity",
    "verify_loop_lemma",
    "verify_pairing_decomposition",
    "verify_partition_sum",
    "verify_subdivision_identity",
    "verify_theorem_1",
]
