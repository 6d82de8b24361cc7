"""Ternary self-dual codes classified through 3-frames of unimodular lattices."""

__version__ = "0.1.0"

from .codes import (MonomialTransform, TernaryCode, are_equivalent, automorphism_group,
                    canonical_form, decompose, dual, is_self_dual, mass_check,
                    mass_number, weight_distribution)
from .construction_a import (Frame, a3, b3, check_frame, even_neighbors, lemma1_check,
                             pi_frame, straight_twisted)
from .classify import (ClassificationReport, FrameClassifier, classify_lattice,
                       classify_length)
from .exceptions import (CatalogError, InvalidFrameError, InvalidLatticeError,
                         NotSelfDualError, ParseError, SdkitError, SearchBudgetExceeded,
                         ValidationError)
from .frames import FrameGraph, build_gamma, enumerate_frames
from .isometry import (IsometryWitness, RootSystemLabel, decompose_lattice,
                       is_isomorphic, root_system)
from .lattice import LatticeGram, kissing_number, min_norm, short_vectors
from .neighbors import p_neighbor
from .shadow import ShadowDecomposition, shadow, shadow_filter

__all__ = [
    "MonomialTransform", "TernaryCode", "are_equivalent", "automorphism_group",
    "canonical_form", "decompose", "dual", "is_self_dual", "mass_check", "mass_number",
    "weight_distribution", "Frame", "a3", "b3", "check_frame", "even_neighbors",
    "lemma1_check", "pi_frame", "straight_twisted", "ClassificationReport",
    "FrameClassifier", "classify_lattice", "classify_length", "CatalogError",
    "InvalidFrameError", "InvalidLatticeError", "NotSelfDualError", "ParseError",
    "SdkitError", "SearchBudgetExceeded", "ValidationError", "FrameGraph", "build_gamma",
    "enumerate_frames", "IsometryWitness", "RootSystemLabel", "decompose_lattice",
    "is_isomorphic", "root_system", "LatticeGram", "kissing_number", "min_norm",
    "short_vectors", "p_neighbor", "ShadowDecomposition", "shadow", "shadow_filter",
]
