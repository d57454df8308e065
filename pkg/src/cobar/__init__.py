"""Barcodes, interleavings and shadow bounds for interval complexes over F2."""

from .barcode import Bar, Barcode, decompose, endpoints, shortest_bar
from .cones import TwistedComplex, cone, reassociate, totalize, twisted, validate_mc
from .core import (
    INF,
    ChainMap,
    Generator,
    GradedMap,
    IntervalComplex,
    complex_from,
    is_homotopic,
    tau,
    translate,
)
from .energy import ActionData, delta_uniform, lift_tower, map_energy, max_lift_shift
from .interleave import Movie, interleaving_distance, is_weakly_ab_isomorphic, movie_bound
from .scenario import CobordismScenario, check_distance_vs_shadow, check_rigidity, gen_hom_barcode, slope_split
from .shadow import ShadowRegion, compress, end_shifts, shadow_area

__version__ = "0.1.0"
