"""Finite group actions on products of CM elliptic curves."""

from .action import (
    DEFAULT_ORDER_CAP,
    FiniteActionGroup,
    FixedLocus,
    GroupOrderExceeded,
    TorusAutomorphism,
    TorusPoint,
    fixed_locus,
    from_holomorphic,
    group_from_dict,
    group_from_json,
    random_automorphism,
    splitting_test,
)
from .builtins import BUILTIN_NAMES, builtin_action, cyclic_surface, hilbert, matsushita, translated
from .cmfield import CMNumber
from .forms import base_action, hodge_numbers, invariant_form_dimension, preserves_symplectic
from .strata import (
    OBSTRUCTED,
    RESOLVABLE,
    UNDECIDED,
    NonSymplecticAction,
    desingularization_obstruction,
    singularity_inventory,
)

__all__ = [
    "BUILTIN_NAMES",
    "CMNumber",
    "DEFAULT_ORDER_CAP",
    "FiniteActionGroup",
    "FixedLocus",
    "GroupOrderExceeded",
    "NonSymplecticAction",
    "OBSTRUCTED",
    "RESOLVABLE",
    "TorusAutomorphism",
    "TorusPoint",
    "UNDECIDED",
    "base_action",
    "builtin_action",
    "cyclic_surface",
    "desingularization_obstruction",
    "fixed_locus",
    "from_holomorphic",
    "group_from_dict",
    "group_from_json",
    "hilbert",
    "hodge_numbers",
    "invariant_form_dimension",
    "matsushita",
    "preserves_symplectic",
    "random_automorphism",
    "singularity_inventory",
    "splitting_test",
    "translated",
]
