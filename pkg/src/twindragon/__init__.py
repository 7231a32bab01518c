"""Twin dragon sections by rational lines: Büchi automata and Hausdorff dimension."""
from .buchi import BuchiAutomaton, Cardinality, classify_cardinality, export, product, trim
from .cns import ALPHA, BASE, GaussianInt, alpha_eval, alpha_expand, digit_table, eval_periodic
from .dimension import DimensionReport, check_not_s_minus_1, hausdorff_dimension, lambda_constants
from .geometry import (
    IntervalUnion,
    NotAnIntervalUnion,
    attractor_points,
    box_counting,
    diagonal_relations_check,
    extract_interval_union,
    extremes,
    vertical_line_endpoints,
)
from .lines import (
    DegenerateLineError,
    LineParams,
    boundary_automaton_base4,
    boundary_line_automaton,
    build_line_automaton,
    normalize_line,
)

__version__ = "0.1.0"
