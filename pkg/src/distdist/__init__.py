"""Exact experiments on distinct distances and rich lines and circles."""
from .bounds import (BoundEnvelope, DyadicLevel, ExponentFit, dyadic_partition, envelope_mult, envelope_ps,
                     fit_exponent, lead_exponent)
from .circles import (CircleCurve4D, IntersectionResult, build_circle_family, circle_ledger, count_incidences_circle,
                      curve_membership, intersection_count_4d, same_curve_conditions_check)
from .distances import (bipartite_distances, distinct_distances, heavy_curve_report, max_collinear,
                        max_concyclic)
from .exact import BiPoly, Rational, UniPoly, count_real_roots, resultant, sturm_sequence
from .generators import (ExactPoint, PointSet, circle_points, composite, lattice, line_points, load_points,
                         random_points, save_points, uneven_lattice)
from .lines import (HyperbolaCurve, build_hyperbola_family, count_incidences_line, enr_products,
                    hyperbola_intersections, line_ledger, multiplicity_vs_vertical_lines)
from .quadruples import QuadrupleStats, choice_bound, enumerate_quadruples, quadruple_stats

__version__ = "0.1.0"

__all__ = [
    "BiPoly",
    "BoundEnvelope",
    "CircleCurve4D",
    "DyadicLevel",
    "ExactPoint",
    "ExponentFit",
    "HyperbolaCurve",
    "IntersectionResult",
    "PointSet",
    "QuadrupleStats",
    "Rational",
    "UniPoly",
    "bipartite_distances",
    "build_circle_family",
    "build_hyperbola_family",
    "choice_bound",
    "circle_ledger",
    "circle_points",
    "composite",
    "count_incidences_circle",
    "count_incidences_line",
    "count_real_roots",
    "curve_membership",
    "distinct_distances",
    "dyadic_partition",
    "enr_products",
    "enumerate_quadruples",
    "envelope_mult",
    "envelope_ps",
    "fit_exponent",
    "heavy_curve_report",
    "hyperbola_intersections",
    "intersection_count_4d",
    "lattice",
    "lead_exponent",
    "line_ledger",
    "line_points",
    "load_points",
    "max_collinear",
    "max_concyclic",
    "multiplicity_vs_vertical_lines",
    "quadruple_stats",
    "random_points",
    "resultant",
    "same_curve_conditions_check",
    "save_points",
    "sturm_sequence",
    "uneven_lattice",
]
