"""Fibers, deck actions and Galois tests for planar branched coverings, plus
numeric checks of the BTZ developing map."""

__version__ = "0.1.0"

from .words import IDENTITY, Word, coset_rep, invert, multiply, reduce
from .fiber import (
    OVERFLOW,
    CapExceeded,
    FiniteLevelSystem,
    LevelSystem,
    NotHomogeneous,
    Thread,
    Verdict,
    bonding_fiber_sizes,
    classify_fiber,
    enumerate_threads,
)
from .cover import (
    UNIVERSAL,
    GaloisVerdict,
    PunctureConfig,
    QuotientSpec,
    deck_transitive_per_level,
    is_galoisian,
    lift_endpoint,
    quotient_levels,
    universal_levels,
)
from .homotopy import PathWord, almost_homotopic, almost_trivial, equivalence_check

__all__ = [
    "IDENTITY",
    "Word",
    "coset_rep",
    "invert",
    "multiply",
    "reduce",
    "OVERFLOW",
    "CapExceeded",
    "FiniteLevelSystem",
    "LevelSystem",
    "NotHomogeneous",
    "Thread",
    "Verdict",
    "bonding_fiber_sizes",
    "classify_fiber",
    "enumerate_threads",
    "UNIVERSAL",
    "GaloisVerdict",
    "PunctureConfig",
    "QuotientSpec",
    "deck_transitive_per_level",
    "is_galoisian",
    "lift_endpoint",
    "quotient_levels",
    "universal_levels",
    "PathWord",
    "almost_homotopic",
    "almost_trivial",
    "equivalence_check",
]
