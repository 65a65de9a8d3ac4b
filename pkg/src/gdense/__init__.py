"""Cluster g-vector fans, 2-term silting complexes and scattering diagrams."""

__version__ = "0.1.0"

from .quiver import ExchangeMatrix, canonical_form, classify, mutate_quiver, mutation_class
from .seeds import GSeed, SeedSet, enumerate_seeds, initial_seed, mutate_seed
from .fan import Fan, SimplicialCone, coverage, fan_from_seeds, fan_is_valid, halfspace_detect
from .algebra import PathAlgebra, PresentationError, kronecker_algebra
from .complexes import TwoTermComplex, cylinder, hom_complexes, is_presilting, random_complex
from .decompose import decompose, e_invariant, generic_decomposition
from .scatter import LieSeries, ScatterLattice, attach_fan_functions, bch_mul, complete_rank2

__all__ = [
    "ExchangeMatrix", "canonical_form", "classify", "mutate_quiver", "mutation_class",
    "GSeed", "SeedSet", "enumerate_seeds", "initial_seed", "mutate_seed",
    "Fan", "SimplicialCone", "coverage", "fan_from_seeds", "fan_is_valid", "halfspace_detect",
    "PathAlgebra", "PresentationError", "kronecker_algebra",
    "TwoTermComplex", "cylinder", "hom_complexes", "is_presilting", "random_complex",
    "decompose", "e_invariant", "generic_decomposition",
    "LieSeries", "ScatterLattice", "attach_fan_functions", "bch_mul", "complete_rank2",
]
