"""Atomic execution of call sequences."""

from typing import Dict, List, Sequence, Tuple

from cpmm_hunter.errors import Revert
from cpmm_hunter.execution.arguments import resolve_account, resolve_arg
from cpmm_hunter.execution.models import (
    BurnCall,
    Call,
    ExecutionContext,
    HookCall,
    SkimCall,
    Snapshot,
    SwapCall,
    SyncCall,
    TraceEntry,
    TransferCall,
    TxResult,
)
from cpmm_hunter.ledger.ledger import burn, invoke_hook, transfer
from cpmm_hunter.pool.amm import skim, swap_exact_in, sync
from cpmm_hunter.world import WorldState


def take_snapshot(state: WorldState) -> Snapshot:
    return Snapshot.of(state)


def restore(snapshot: Snapshot) -> WorldState:
    return snapshot.world()


def _stringify(values: Dict[str, object]) -> Dict[str, str]:
    return {key: str(value) for key, value in values.items() if value is not None}


def apply_call(
    state: WorldState, call: Call, ctx: ExecutionContext
) -> Tuple[List[int], Dict[str, str]]:
    """Execute one call in place.

    Returns:
        Resolved argument values and a description of the outcome
    """
    if isinstance(call, TransferCall):
        amount = resolve_arg(call.amount, state, ctx)
        to = resolve_account(call.to, state, ctx)
        outcome = transfer(state, call.token, ctx.attacker, to, amount)
        return [amount], _stringify(outcome.model_dump())
    if isinstance(call, BurnCall):
        amount = resolve_arg(call.amount, state, ctx)
        holder = resolve_account(call.from_, state, ctx)
        burn(state, call.token, ctx.attacker, holder, amount)
        return [amount], {"burned": str(amount)}
    if isinstance(call, SkimCall):
        skimmed_x, skimmed_y = skim(state, call.pool, resolve_account(call.to, state, ctx))
        return [], {"skimmed_x": str(skimmed_x), "skimmed_y": str(skimmed_y)}
    if isinstance(call, SyncCall):
        sync(state, call.pool)
        pool = state.pool(call.pool)
        return [], {"reserve_x": str(pool.reserve_x), "reserve_y": str(pool.reserve_y)}
    if isinstance(call, SwapCall):
        amount = resolve_arg(call.amount, state, ctx)
        to = resolve_account(call.to, state, ctx)
        amount_out = swap_exact_in(state, call.pool, call.input_token, amount, to, ctx.attacker)
        return [amount], {"amount_out": str(amount_out)}
    if isinstance(call, HookCall):
        invoke_hook(state, call.token, call.name, ctx.attacker)
        return [], {}
    raise TypeError(f"unsupported call {call!r}")


def execute_tx(state: WorldState, calls: Sequence[Call], ctx: ExecutionContext) -> TxResult:
    """Run ``calls`` atomically against a private copy of ``state``.

    Every argument is resolved right before its call. The snapshots after the
    first call and after the second-to-last call bound the invariant window.
    On a revert the result carries the initial state and the failing index.
    ``state`` itself is never modified.

    Args:
        state: Initial world state
        calls: Non-empty call sequence
        ctx: Attacker and target pool

    Returns:
        Transaction result
    """
    if not calls:
        raise ValueError("execute_tx needs at least one call")

    work = state.clone()
    trace: List[TraceEntry] = []
    last = len(calls) - 1
    opened = closed = None
    if last == 0:
        opened = closed = Snapshot.of(state)

    for index, call in enumerate(calls):
        try:
            args, outcome = apply_call(work, call, ctx)
        except Revert as e:
            return TxResult(
                reverted=True,
                final=Snapshot.of(state),
                trace=trace,
                revert_reason=e.reason,
                failed_index=index,
            )
        trace.append(TraceEntry(op=call.op, call=call, args_resolved=args, outcome=outcome))
        if index == 0 and last > 0:
            opened = Snapshot.of(work)
        if index == last - 1:
            closed = opened if index == 0 else Snapshot.of(work)

    return TxResult(reverted=False, final=Snapshot(work), trace=trace, window=(opened, closed))
