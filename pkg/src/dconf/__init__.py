"""Discretized configuration spaces of simplicial complexes.

Builds the space of n-tuples of pairwise disjoint faces of a finite
simplicial complex, constructs a maximal gradient matching on its cells,
extracts the chain complex carried by the critical cells, and computes
integer homology exactly. Closed-form predictions for two points on skeleta
of simplexes are included and verified against the computations.
"""

from .cells import (Cell, CellTable, cell_dimension, cell_key, cell_order,
                    cell_to_string, delete_vertex, enumerate_cells,
                    estimate_cell_count, face, facets, incidence,
                    insert_vertex, parse_cell, vertex_union)
from .closedform import (SkeletonParams, classify_cell, collapsible_match,
                         critical_type, format_sweep_csv, predicted_betti,
                         predicted_critical_counts, predicted_type_counts,
                         redundant_match, two_d_critical_count)
from .complexes import (ComplexFormatError, Simplex, SimplicialComplex,
                        complex_text, face_order, parse_complex, simplex_key,
                        skeleton_complex)
from .field import (COLLAPSIBLE, CRITICAL, REDUNDANT, DiscreteField,
                    FieldReport, Match, build_field, check_acyclic,
                    check_forced_redundancy, check_maximal, classify,
                    field_dot)
from .homology import (ChainComplex, DegreeHomology, HomologyResult,
                       cellular_complex, homology, invariant_factors,
                       smith_normal_form)
from .morse import (MorseComplex, count_lower_paths, flow_to_critical,
                    iter_gradient_paths, iter_lower_paths, morse_boundary,
                    path_multiplicity_sum)

__version__ = "0.1.0"

__all__ = [
    "Cell", "CellTable", "ChainComplex", "COLLAPSIBLE", "ComplexFormatError",
    "CRITICAL", "DegreeHomology", "DiscreteField", "FieldReport",
    "HomologyResult", "Match", "MorseComplex", "REDUNDANT", "Simplex",
    "SimplicialComplex", "SkeletonParams",
    "build_field", "cell_dimension", "cell_key", "cell_order",
    "cell_to_string", "cellular_complex", "check_acyclic",
    "check_forced_redundancy", "check_maximal", "classify", "classify_cell",
    "collapsible_match", "complex_text", "count_lower_paths",
    "critical_type", "delete_vertex", "enumerate_cells",
    "estimate_cell_count", "face", "face_order", "facets", "field_dot",
    "flow_to_critical", "format_sweep_csv", "homology", "incidence",
    "insert_vertex", "invariant_factors", "iter_gradient_paths",
    "iter_lower_paths", "morse_boundary", "parse_cell", "parse_complex",
    "path_multiplicity_sum", "predicted_betti", "predicted_critical_counts",
    "predicted_type_counts", "redundant_match", "simplex_key",
    "skeleton_complex", "smith_normal_form", "two_d_critical_count",
    "vertex_union",
]
