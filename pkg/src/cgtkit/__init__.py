"""Computational group theory toolkit for symmetric graphs of prime valency."""

from .perm import Permutation, compose, format_cycles, inverse, order, parity, parse_cycles
from .stabchain import PermGroup, StabChain, alternating_group, symmetric_group

__version__ = "0.1.0"

__all__ = [
    "Permutation",
    "PermGroup",
    "StabChain",
    "alternating_group",
    "symmetric_group",
    "compose",
    "format_cycles",
    "inverse",
    "order",
    "parity",
    "parse_cycles",
]
