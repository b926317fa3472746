"""Exact dimer models on graphs embedded in closed oriented surfaces.

Partition functions and correlations are computed as signed sums of
Pfaffians of Kasteleyn matrices, one per class of Kasteleyn orientation,
with signs given by Arf invariants of discrete spin structures.  Every
quantity is an exact rational and is cross-checked against brute-force
matching enumeration and a Grassmann-algebra oracle.
"""
from .errors import DimerError
from .kasteleyn import Orientation, class_representatives, construct, is_kasteleyn
from .matchings import WeightSystem, matching_list, partition_bruteforce
from .pfaffian import correlation_pfaffian, partition_pfaffian
from .smg import emit, parse, parse_text
from .spinform import QuadraticForm, arf, build_form
from .surface_map import SurfaceMap, build, homology_basis

__version__ = "0.1.0"

__all__ = [
    "DimerError",
    "Orientation",
    "QuadraticForm",
    "SurfaceMap",
    "WeightSystem",
    "arf",
    "build",
    "build_form",
    "class_representatives",
    "construct",
    "correlation_pfaffian",
    "emit",
    "homology_basis",
    "is_kasteleyn",
    "matching_list",
    "parse",
    "parse_text",
    "partition_bruteforce",
    "partition_pfaffian",
]
