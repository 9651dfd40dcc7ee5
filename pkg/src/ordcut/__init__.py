"""Exact computation with cuts in finite-rank lexicographic groups and in Q((G))."""
from .cuts import (Ball, Bot, Irr, Prin, Top, add_cut, ball_witness, both_edges,
                   canonical, cofinality, cuts_equal, invariance_group,
                   invariance_level, is_group_cut, quotient_cut, same_r_place,
                   side_of, signature)
from .errors import OrdcutError
from .fields import (BallF, IrrF, ModuleDesc, PrinF, ValuationRingDesc,
                     field_invariance_module, invariance_valuation_ring,
                     project_cut)
from .group import INFINITY, Q, Z, GroupElement, OrderedGroup
from .pcs import PCSeq, TailRule, breadth, cut_of_pcs, is_limit, validate_pcs
from .series import Series, TailSeries, series_inverse

__version__ = "0.1.0"

__all__ = [
    "Ball", "BallF", "Bot", "GroupElement", "INFINITY", "Irr", "IrrF", "ModuleDesc",
    "OrderedGroup", "OrdcutError", "PCSeq", "Prin", "PrinF", "Q", "Series", "TailRule",
    "TailSeries", "Top", "ValuationRingDesc", "Z", "add_cut", "ball_witness", "both_edges",
    "breadth", "canonical", "cofinality", "cut_of_pcs", "cuts_equal",
    "field_invariance_module", "invariance_group", "invariance_level",
    "invariance_valuation_ring", "is_group_cut", "is_limit", "project_cut",
    "quotient_cut", "same_r_place", "series_inverse", "side_of", "signature",
    "validate_pcs",
]
