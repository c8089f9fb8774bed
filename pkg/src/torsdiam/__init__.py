"""Subgroup growth, Schreier graph diameters, hyperbolic volume bounds and torsion in homology."""
__version__ = "0.1.0"

from .errors import ConfigError, InvariantViolation, ScaleExceeded, TorsdiamError
from .subgroups import SubgroupCountTable, count_subgroups, count_transitive_pairs_bruteforce
from .schreier import (SchreierGraph, diameter_statistics, enumerate_subgroups,
                       graph_canonical_form, graph_diameter, sample_schreier)

__all__ = [
    "ConfigError", "InvariantViolation", "ScaleExceeded", "TorsdiamError",
    "SubgroupCountTable", "count_subgroups", "count_transitive_pairs_bruteforce",
    "SchreierGraph", "diameter_statistics", "enumerate_subgroups",
    "graph_canonical_form", "graph_diameter", "sample_schreier",
]
