"""Simplicial complexes, integer homology, nets and nerves on finite metric spaces."""
from .simplicial import SimplicialComplex, boundary_columns, boundary_matrix
from .snf import SmithResult, smith_normal_form
from .homology import HomologyProfile, homology
from .metric import FiniteMetricSpace, build_model
from .nerve import Net, build_net, cech_nerve, rips_nerve, covers, DimensionCapWarning
from .gabber import GabberScan, gabber_scan, load_table, hadamard_gabber_constant
from .pipeline import PipelineResult, nerve_pipeline, default_preset

__all__ = [
    "SimplicialComplex", "boundary_columns", "boundary_matrix",
    "SmithResult", "smith_normal_form", "HomologyProfile", "homology",
    "FiniteMetricSpace", "build_model", "Net", "build_net", "cech_nerve",
    "rips_nerve", "covers", "DimensionCapWarning", "GabberScan", "gabber_scan",
    "load_table", "hadamard_gabber_constant", "PipelineResult", "nerve_pipeline",
    "default_preset",
]
