"""Signatures of finite-index subgroups of NEC groups from coset actions."""

from .hoare import SubgroupReport, subgroup_signature
from .permutation import Permutation, format_cycles, parse_cycles
from .representation import CosetAction, orientability, validate_action
from .signature import (
    FuchsianSignature,
    NecSignature,
    Sign,
    canonical_fuchsian,
    canonical_presentation,
    format_signature,
    normalize,
    parse_signature,
    reduced_area,
    validate_signature,
)

__all__ = [
    "CosetAction",
    "FuchsianSignature",
    "NecSignature",
    "Permutation",
    "Sign",
    "SubgroupReport",
    "canonical_fuchsian",
    "canonical_presentation",
    "format_cycles",
    "format_signature",
    "normalize",
    "orientability",
    "parse_cycles",
    "parse_signature",
    "reduced_area",
    "subgroup_signature",
    "validate_action",
    "validate_signature",
]
