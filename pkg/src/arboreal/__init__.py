"""Tree actions of profinite-type groups, checked by exact finite computation."""

__version__ = "0.1.0"

from .chains import ChainPoint, LevelGroupSystem
from .classify import ChainReport, chain_report, centralizer_Z_upper, non_hausdorff_check, stabilizer_K
from .perm import Perm, compose, inverse, noncommuting_stabilizer_witness, order_and_parity, power
from .permgroup import PermGroup, alternating_group, cyclic_group, equivariant_quotient_check, symmetric_group
from .portrait import Portrait, wreath_act, wreath_decompose
from .tree import SphericalIndex, VertexAddress, in_cylinder, level_size, metric, residual_vertices

__all__ = [
    "ChainPoint",
    "ChainReport",
    "LevelGroupSystem",
    "Perm",
    "PermGroup",
    "Portrait",
    "SphericalIndex",
    "VertexAddress",
    "alternating_group",
    "centralizer_Z_upper",
    "chain_report",
    "compose",
    "cyclic_group",
    "equivariant_quotient_check",
    "in_cylinder",
    "inverse",
    "level_size",
    "metric",
    "non_hausdorff_check",
    "noncommuting_stabilizer_witness",
    "order_and_parity",
    "power",
    "residual_vertices",
    "stabilizer_K",
    "symmetric_group",
    "wreath_act",
    "wreath_decompose",
]
