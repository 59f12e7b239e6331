"""Constant-product pools."""

from cpmm_hunter.pool.models import PoolState
from cpmm_hunter.pool.amm import get_amount_out, skim, swap_exact_in, sync

__all__ = ["PoolState", "get_amount_out", "skim", "swap_exact_in", "sync"]
