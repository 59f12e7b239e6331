"""Invariant and profit oracles."""

from cpmm_hunter.oracle.models import PriceTable, Verdict
from cpmm_hunter.oracle.oracle import assess, check_invariant1, check_invariant2, evaluate_profit

__all__ = [
    "PriceTable",
    "Verdict",
    "assess",
    "check_invariant1",
    "check_invariant2",
    "evaluate_profit",
]
