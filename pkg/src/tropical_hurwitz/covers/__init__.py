"""Enumeration of tropical covers and the tropical open Hurwitz number."""

from .enumerate import DEFAULT_NODE_BUDGET, BudgetExceeded, CoverSearch, PieceState
from .model import (
    Cover,
    CoverTerm,
    LabeledCount,
    WeightedCount,
    aut_order_by_orbit,
    aut_order_of_cover,
    enumerate_covers,
    euler_characteristic_check,
    labeled_count,
    multiplicity,
    structural_violations,
    tropical_open_hurwitz,
    unnormalized_weight,
)

__all__ = [
    "DEFAULT_NODE_BUDGET",
    "BudgetExceeded",
    "Cover",
    "CoverSearch",
    "CoverTerm",
    "LabeledCount",
    "PieceState",
    "WeightedCount",
    "aut_order_by_orbit",
    "aut_order_of_cover",
    "enumerate_covers",
    "euler_characteristic_check",
    "labeled_count",
    "multiplicity",
    "structural_violations",
    "tropical_open_hurwitz",
    "unnormalized_weight",
]
