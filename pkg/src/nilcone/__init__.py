"""Exact graded G-module data for nilpotent-orbit coordinate rings.

The library computes, in exact integer arithmetic, the multiplicity of
each irreducible module L(lambda) in every graded piece of the functions
on the nilpotent cone and on the closure of the subregular nilpotent
orbit, together with the root system, Weyl group, partition function and
weight multiplicity machinery this requires.
"""

__version__ = "0.1.0"

from .errors import (
    CacheFormatError,
    InadmissibleTypeError,
    InternalInconsistencyError,
    NilconeError,
    NonDominantWeightError,
    PositivityViolationError,
    WeylCapExceededError,
    WrongRootSystemError,
)
from .graded import (
    CohomologyTable,
    GradedCalculator,
    ModuleKind,
    Variety,
    a2_tilting_euler,
)
from .multiplicity import (
    WeightMultiplicities,
    freudenthal_mult,
    kostant_mult,
    weyl_dim,
)
from .partition import PartitionTable, big_p, p, table_for
from .rootsys import RootSystem, RootSystemId, build
from .weyl import (
    DEFAULT_CAP,
    WeylElement,
    WeylGroup,
    dot_action,
    enumerate_group,
    euler_induced,
    reflection_length_theta,
    shift_constant,
)

__all__ = [
    "CacheFormatError",
    "CohomologyTable",
    "DEFAULT_CAP",
    "GradedCalculator",
    "InadmissibleTypeError",
    "InternalInconsistencyError",
    "ModuleKind",
    "NilconeError",
    "NonDominantWeightError",
    "PartitionTable",
    "PositivityViolationError",
    "RootSystem",
    "RootSystemId",
    "Variety",
    "WeightMultiplicities",
    "WeylCapExceededError",
    "WeylElement",
    "WeylGroup",
    "WrongRootSystemError",
    "a2_tilting_euler",
    "big_p",
    "build",
    "dot_action",
    "enumerate_group",
    "euler_induced",
    "freudenthal_mult",
    "kostant_mult",
    "p",
    "reflection_length_theta",
    "shift_constant",
    "table_for",
    "weyl_dim",
]
