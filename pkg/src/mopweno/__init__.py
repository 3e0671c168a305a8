"""Fifth-order finite-volume WENO with pluggable mapped weights and the
order-preserving (MOP) transform."""

from mopweno.mappings import REGISTRY, MappingSpec, default_spec, make_mapping
from mopweno.weno_core import EPSILON, IDEAL_WEIGHTS, reconstruct_interface

__all__ = [
    "EPSILON",
    "IDEAL_WEIGHTS",
    "REGISTRY",
    "MappingSpec",
    "default_spec",
    "make_mapping",
    "reconstruct_interface",
]
