"""Runtime argument resolution.

Balance-dependent arguments are resolved immediately before the call that
uses them, against the state left by every earlier call of the transaction.
"""

from cpmm_hunter.amounts import checked_sub, mul_div
from cpmm_hunter.errors import Revert
from cpmm_hunter.execution.models import (
    PAIR,
    SELF,
    BalanceOfPair,
    BalanceOfSelf,
    BurnSupplyFormula,
    ConstantArg,
    ExecutionContext,
    FeeAdjusted,
    PairBalanceMinusOne,
    SymbolicArg,
)
from cpmm_hunter.ledger.ledger import balance_of, circulating_supply
from cpmm_hunter.world import WorldState


def resolve_account(name: str, state: WorldState, ctx: ExecutionContext) -> str:
    """Map the ``self``/``pair`` placeholders to ledger accounts."""
    if name == SELF:
        return ctx.attacker
    if name == PAIR:
        return state.pool(ctx.pool).account
    return name


def compute_exclusive_fee_amount(state: WorldState, token: str, desired_total: int) -> int:
    """Largest ``a`` with ``a + fee(a) <= desired_total``.

    Tokens without an exclusive fee return ``desired_total`` unchanged.

    Args:
        state: World holding the token
        token: Token id
        desired_total: Amount the sender can afford to have debited

    Returns:
        Transfer amount
    """
    fee = state.token(token).spec.fee
    if fee is None or fee.mode != "exclusive":
        return desired_total

    def total(a: int) -> int:
        return a + fee.fee_for(a)

    if fee.max_fee is not None and desired_total >= fee.max_fee:
        capped = desired_total - fee.max_fee
        if fee.fee_for(capped) == fee.max_fee:
            return capped

    # The closed form undershoots by at most a couple of units because of fee truncation.
    amount = desired_total * 10_000 // (10_000 + fee.rate_bps)
    while total(amount + 1) <= desired_total:
        amount += 1
    while amount > 0 and total(amount) > desired_total:
        amount -= 1
    return amount


def resolve_arg(arg: SymbolicArg, state: WorldState, ctx: ExecutionContext) -> int:
    """Evaluate a symbolic argument against the current state.

    Args:
        arg: Argument to evaluate
        state: Current world state
        ctx: Attacker and pool of the transaction

    Returns:
        Concrete amount

    Raises:
        Revert: On division by zero or underflow
    """
    if isinstance(arg, ConstantArg):
        return arg.value
    if isinstance(arg, BalanceOfSelf):
        return balance_of(state, arg.token, ctx.attacker)
    if isinstance(arg, BalanceOfPair):
        return balance_of(state, arg.token, resolve_account(PAIR, state, ctx))
    if isinstance(arg, PairBalanceMinusOne):
        pair_balance = balance_of(state, arg.token, resolve_account(PAIR, state, ctx))
        if pair_balance == 0:
            raise Revert("pair balance is zero")
        return pair_balance - 1
    if isinstance(arg, BurnSupplyFormula):
        supply = circulating_supply(state, arg.token)
        pair_balance = balance_of(state, arg.token, resolve_account(PAIR, state, ctx))
        return checked_sub(supply, mul_div(2, supply, pair_balance))
    if isinstance(arg, FeeAdjusted):
        return compute_exclusive_fee_amount(state, arg.token, resolve_arg(arg.inner, state, ctx))
    raise TypeError(f"unsupported argument {arg!r}")
