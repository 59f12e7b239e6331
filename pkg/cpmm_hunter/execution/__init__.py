"""Atomic execution of symbolic call sequences."""

from cpmm_hunter.execution.models import (
    BalanceOfPair,
    BalanceOfSelf,
    BurnCall,
    BurnSupplyFormula,
    Call,
    ConstantArg,
    ExecutionContext,
    FeeAdjusted,
    HookCall,
    PairBalanceMinusOne,
    SkimCall,
    Snapshot,
    SwapCall,
    SymbolicArg,
    SyncCall,
    TraceEntry,
    TransferCall,
    TxResult,
)
from cpmm_hunter.execution.arguments import compute_exclusive_fee_amount, resolve_arg
from cpmm_hunter.execution.executor import execute_tx, restore, take_snapshot

__all__ = [
    "BalanceOfPair",
    "BalanceOfSelf",
    "BurnCall",
    "BurnSupplyFormula",
    "Call",
    "ConstantArg",
    "ExecutionContext",
    "FeeAdjusted",
    "HookCall",
    "PairBalanceMinusOne",
    "SkimCall",
    "Snapshot",
    "SwapCall",
    "SymbolicArg",
    "SyncCall",
    "TraceEntry",
    "TransferCall",
    "TxResult",
    "compute_exclusive_fee_amount",
    "resolve_arg",
    "execute_tx",
    "restore",
    "take_snapshot",
]
