"""Desk-scale laboratory for fractional graph coloring versus the Hall ratio.

Exact rational arithmetic end to end: the fractional chromatic number comes
from column generation over an exact simplex, the Hall ratio from a full
subset sweep, and a construction algebra (join, composition, lexicographic
product, Mycielskian, seeded random gadgets) feeds both, together with the
up-arrow bookkeeping functions of the recursive composition shapes.
"""

from .ackermann import (F, Overflow, check_appendix_basics, check_fact1,
                        check_fact2, check_fact3, f_inv, up_arrow)
from .construct import (BudgetExhaustedError, ConstructionExpr, GadgetReport,
                        TriangleFreeSample, build, compose, join, join_many,
                        lex_product, mycielski, parse_expression, random_graph,
                        recursive_composition_miniature,
                        recursive_composition_sizes, sample_triangle_free,
                        search_gadget, theorem_join_miniature)
from .fraclp import (FractionalCertificate, certificate_from_json,
                     certificate_to_json, check_composition_upper,
                     check_fracprod, chi_f, chi_f_full_enumeration,
                     max_weight_independent_set, verify_certificate)
from .graph import (Graph, SizeLimitError, complement, complete_graph,
                    components, cycle_graph, empty_graph, format_dimacs,
                    induced, is_triangle_free, kneser_graph, new_graph,
                    parse_dimacs, path_graph, read_dimacs, write_dimacs)
from .hall import (GapReport, HallResult, gap_report, hall_ratio,
                   hall_ratio_lower_bound)
from .invariants import (Coloring, alpha, alpha_weighted, check_prop_col,
                         check_sparse_three_colorable, chromatic_number,
                         clique_at_least, is_k_colorable)
from .verify import SUITE_NAMES, run_battery, run_suite

__version__ = "0.1.0"

__all__ = [
    "BudgetExhaustedError", "Coloring", "ConstructionExpr", "F",
    "FractionalCertificate", "GadgetReport", "GapReport", "Graph",
    "HallResult", "Overflow", "SUITE_NAMES", "SizeLimitError",
    "TriangleFreeSample", "alpha", "alpha_weighted", "build",
    "certificate_from_json", "certificate_to_json", "check_appendix_basics",
    "check_composition_upper", "check_fact1", "check_fact2", "check_fact3",
    "check_fracprod", "check_prop_col", "check_sparse_three_colorable",
    "chi_f", "chi_f_full_enumeration", "chromatic_number", "clique_at_least",
    "complement", "complete_graph", "components", "compose", "cycle_graph",
    "empty_graph", "f_inv", "format_dimacs", "gap_report", "hall_ratio",
    "hall_ratio_lower_bound", "induced", "is_k_colorable", "is_triangle_free",
    "join", "join_many", "kneser_graph", "lex_product",
    "max_weight_independent_set", "mycielski", "new_graph", "parse_dimacs",
    "parse_expression", "path_graph", "random_graph", "read_dimacs",
    "recursive_composition_miniature", "recursive_composition_sizes",
    "run_battery", "run_suite", "sample_triangle_free", "search_gadget",
    "theorem_join_miniature", "up_arrow", "verify_certificate",
    "write_dimacs",
]
