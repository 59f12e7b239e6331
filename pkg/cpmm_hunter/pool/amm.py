"""Constant-product swap math and the pair operations."""

from typing import Tuple

from cpmm_hunter.amounts import checked_add, checked_mul
from cpmm_hunter.errors import Revert
from cpmm_hunter.ledger.ledger import atomic, balance_of, transfer
from cpmm_hunter.world import WorldState


def get_amount_out(
    amount_in: int, reserve_in: int, reserve_out: int, fee_num: int = 997, fee_den: int = 1000
) -> int:
    """Output of a constant-product swap with a multiplicative fee.

    Args:
        amount_in: Amount the pool received
        reserve_in: Reserve of the input token
        reserve_out: Reserve of the output token
        fee_num: Fee numerator (997 for a 0.3% fee)
        fee_den: Fee denominator

    Returns:
        ``floor(amount_in*fee_num*reserve_out / (reserve_in*fee_den + amount_in*fee_num))``
    """
    if reserve_in == 0 or reserve_out == 0:
        raise Revert("insufficient liquidity")
    amount_in_with_fee = checked_mul(amount_in, fee_num)
    numerator = checked_mul(amount_in_with_fee, reserve_out)
    denominator = checked_add(checked_mul(reserve_in, fee_den), amount_in_with_fee)
    return numerator // denominator


def swap_exact_in(
    state: WorldState, pool_id: str, input_token: str, amount_in: int, to: str, sender: str
) -> int:
    """Sell ``amount_in`` of ``input_token`` into the pool.

    The input is pushed through the token's transfer pipeline first, and the
    swap is priced on what the pool actually holds above its reserve, which
    also picks up tokens left in the pool by earlier calls. A revert undoes
    both legs.

    Returns:
        Output amount sent to ``to``
    """
    pool = state.pool(pool_id)
    if not pool.trades(input_token):
        raise Revert(f"token {input_token} not traded by pool {pool_id}")
    output_token = pool.other(input_token)

    with atomic(state, pool.token_x, pool.token_y):
        transfer(state, input_token, sender, pool.account, amount_in)

        # Reserves may have moved during the transfer (sell-side deflation).
        reserve_in = pool.reserve_of(input_token)
        reserve_out = pool.reserve_of(output_token)
        received = max(balance_of(state, input_token, pool.account) - reserve_in, 0)
        amount_out = get_amount_out(received, reserve_in, reserve_out, pool.fee_num, pool.fee_den)
        if amount_out == 0:
            raise Revert("insufficient output")

        transfer(state, output_token, pool.account, to, amount_out)

        reserve_x = balance_of(state, pool.token_x, pool.account)
        reserve_y = balance_of(state, pool.token_y, pool.account)
        if not reserve_x or not reserve_y:
            raise Revert("insufficient liquidity")
        pool.reserve_x, pool.reserve_y = reserve_x, reserve_y
    return amount_out


def skim(state: WorldState, pool_id: str, to: str) -> Tuple[int, int]:
    """Send each token's excess over its reserve to ``to``; reserves are unchanged."""
    pool = state.pool(pool_id)
    with atomic(state, pool.token_x, pool.token_y):
        excess_x = max(balance_of(state, pool.token_x, pool.account) - pool.reserve_x, 0)
        transfer(state, pool.token_x, pool.account, to, excess_x)
        excess_y = max(balance_of(state, pool.token_y, pool.account) - pool.reserve_y, 0)
        transfer(state, pool.token_y, pool.account, to, excess_y)
    return excess_x, excess_y


def sync(state: WorldState, pool_id: str) -> None:
    """Adopt the pool's ledger balances as its reserves."""
    pool = state.pool(pool_id)
    reserve_x = balance_of(state, pool.token_x, pool.account)
    reserve_y = balance_of(state, pool.token_y, pool.account)
    if not reserve_x or not reserve_y:
        raise Revert("sync to zero reserve")
    pool.reserve_x, pool.reserve_y = reserve_x, reserve_y
