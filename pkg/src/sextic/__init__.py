"""Maximal plane sextics with a type E7 singular point.

Trigonal models are enumerated as skeletons (planar maps), decorated with a
bigon for the E7 point, and turned into singularity sets, maximality
certificates and presentations of the fundamental group of the complement.
"""

from .braids import Braid3, infinity_package
from .fpgroup import FpPresentation, order
from .maps import CombMap, parse_skeleton
from .pipeline import (SingularitySet, SingularityType, assemble_presentation, check_maximality,
                       classify_e7, paper_relations, singularity_set, split_analysis)
from .skeletons import SexticModel, enumerate_e7_models, enumerate_skeletons

__all__ = [
    "Braid3", "infinity_package", "FpPresentation", "order", "CombMap", "parse_skeleton",
    "SingularitySet", "SingularityType", "assemble_presentation", "check_maximality",
    "classify_e7", "paper_relations", "singularity_set", "split_analysis", "SexticModel",
    "enumerate_e7_models", "enumerate_skeletons",
]
