"""Frobenius and Mori invariants of projective Q-factorial toric varieties.

Exact (integer/rational) computation of divisor class groups, positivity
cones, Frobenius pushforward decompositions, the Frobenius support and its
alpha-densities, ample/nef F-signatures, extremal contractions and inert
blowdown chains, from a complete simplicial fan.
"""

__version__ = "0.1.0"

from .catalog import catalog, catalog_names
from .classes import ClassElement, ClassGroup, class_group
from .errors import ToricFrobError
from .fan import Fan, make_fan, validate
from .fanjson import parse_fan, serialize_fan
from .frobenius import (
    alpha,
    f_effective_cones,
    fsupp,
    multiplicity,
    signatures,
    trace_kernel_decomposition,
    twisted_decomposition,
)
from .mori import blowdown_chain, extremal_contractions, mori_cone
from .report import run_report

__all__ = [
    "__version__",
    "Fan",
    "make_fan",
    "validate",
    "parse_fan",
    "serialize_fan",
    "ClassElement",
    "ClassGroup",
    "class_group",
    "catalog",
    "catalog_names",
    "fsupp",
    "alpha",
    "signatures",
    "multiplicity",
    "trace_kernel_decomposition",
    "twisted_decomposition",
    "f_effective_cones",
    "mori_cone",
    "extremal_contractions",
    "blowdown_chain",
    "run_report",
    "ToricFrobError",
]
