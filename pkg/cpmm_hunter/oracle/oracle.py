"""Invariant and profitability checks."""

from dataclasses import replace
from decimal import Decimal
from fractions import Fraction
from typing import Union

from cpmm_hunter.execution.models import Snapshot, TxResult
from cpmm_hunter.oracle.models import PriceTable, Verdict


def check_invariant1(before: Snapshot, after: Snapshot, pool: str, token_y: str) -> bool:
    """True if the pool's token_y balance strictly decreased across the window.

    Users must not remove a pool's holdings without paying the pool.
    """
    account = before.peek().pool(pool).account
    return after.balance_of(token_y, account) < before.balance_of(token_y, account)


def check_invariant2(before: Snapshot, after: Snapshot, attacker: str, token_y: str) -> bool:
    """True if the attacker's token_y balance strictly increased across the window.

    Users must not obtain pool-traded tokens at no cost.
    """
    return after.balance_of(token_y, attacker) > before.balance_of(token_y, attacker)


def evaluate_profit(
    initial: Snapshot,
    final: Snapshot,
    attacker: str,
    prices: PriceTable,
    threshold_usd: Union[Fraction, Decimal, int],
) -> Verdict:
    """Decide whether a transaction made the attacker money.

    Profitable means no attacker balance went down, at least one went up, and
    the largest priced gain is worth strictly more than ``threshold_usd``.

    Args:
        initial: State before the transaction
        final: State after the transaction
        attacker: Attacker account
        prices: USD prices
        threshold_usd: Minimum profit in USD

    Returns:
        Verdict with the invariant flags unset
    """
    threshold = Fraction(threshold_usd)
    world = initial.peek()
    gains = []
    for token in sorted(world.tokens):
        delta = final.balance_of(token, attacker) - initial.balance_of(token, attacker)
        if delta < 0:
            return Verdict()
        if delta > 0:
            gains.append((token, delta))
    if not gains:
        return Verdict()

    priced = []
    for token, delta in gains:
        usd = prices.usd(token, delta, world.tokens[token].spec.decimals)
        if usd is not None:
            priced.append((usd, token, delta))
    if not priced:
        token, delta = gains[0]
        return Verdict(unpriceable=True, profit_token=token, profit_amount=delta)

    usd, token, delta = max(priced, key=lambda item: (item[0], item[1]))
    return Verdict(
        profitable=usd > threshold,
        profit_token=token,
        profit_amount=delta,
        profit_usd=usd,
    )


def assess(
    initial: Snapshot,
    result: TxResult,
    attacker: str,
    pool: str,
    token_y: str,
    prices: PriceTable,
    threshold_usd: Union[Fraction, Decimal, int],
) -> Verdict:
    """Full verdict for an executed transaction: invariant window plus profit."""
    if result.reverted or result.window is None:
        return Verdict()
    before, after = result.window
    verdict = evaluate_profit(initial, result.final, attacker, prices, threshold_usd)
    return replace(
        verdict,
        invariant1_broken=check_invariant1(before, after, pool, token_y),
        invariant2_broken=check_invariant2(before, after, attacker, token_y),
    )
