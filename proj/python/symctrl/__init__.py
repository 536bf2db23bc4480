"""Structural (target) controllability of undirected networks."""

from symctrl._core import (
    __version__,
    analyze,
    example_network,
    hall_check,
    is_structurally_controllable,
    is_structurally_target_controllable,
    monte_carlo_verify,
    suggest_input_augmentation,
    term_rank,
)

__all__ = [
    "__version__",
    "analyze",
    "example_network",
    "hall_check",
    "is_structurally_controllable",
    "is_structurally_target_controllable",
    "monte_carlo_verify",
    "suggest_input_augmentation",
    "term_rank",
]
