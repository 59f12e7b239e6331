"""Token ledger operations and the behavior interpreter."""

from __future__ import annotations

from contextlib import contextmanager
from typing import TYPE_CHECKING, Iterator

from cpmm_hunter.amounts import check_uint256, checked_add, mul_div
from cpmm_hunter.errors import Revert, UnknownEntityError
from cpmm_hunter.ledger.models import BURN_SINK, TokenLedger, TokenSpec, TransferOutcome
from cpmm_hunter.world import WorldState

if TYPE_CHECKING:
    from cpmm_hunter.pool.models import PoolState


def new_ledger(spec: TokenSpec) -> TokenLedger:
    """Create an empty ledger for ``spec``; allocate with ``allocate`` then ``seal_baseline``."""
    ledger = TokenLedger(spec=spec)
    rebase = spec.rebase
    if rebase is not None:
        ledger.token_supply = rebase.initial_token_supply
        ledger.share_supply = rebase.initial_share_supply
    return ledger


def to_raw(ledger: TokenLedger, amount: int) -> int:
    """Convert token units to raw ledger units (shares for rebase tokens)."""
    if ledger.spec.rebase is None:
        return amount
    return amount * ledger.share_supply // ledger.token_supply


def from_raw(ledger: TokenLedger, raw: int) -> int:
    if ledger.spec.rebase is None:
        return raw
    return raw * ledger.token_supply // ledger.share_supply


def allocate(ledger: TokenLedger, account: str, amount: int) -> None:
    """Credit a genesis allocation of ``amount`` token units."""
    ledger.set_raw(account, checked_add(ledger.raw(account), to_raw(ledger, amount)))


def seal_baseline(ledger: TokenLedger) -> None:
    """Record the genesis raw total against which conservation is checked."""
    ledger.supply_baseline = sum(ledger.balances.values()) + ledger.burned - ledger.minted


def balance_of(state: WorldState, token: str, account: str) -> int:
    """Token balance of ``account``; share balances are valued at the current rate."""
    ledger = state.token(token)
    return from_raw(ledger, ledger.raw(account))


def circulating_supply(state: WorldState, token: str) -> int:
    """``totalSupply()`` as callers see it."""
    ledger = state.token(token)
    if ledger.spec.rebase is not None:
        return ledger.token_supply
    return ledger.spec.total_supply + ledger.minted - ledger.burned


def check_conservation(state: WorldState, token: str) -> bool:
    """True if raw balances plus burned minus minted equals the genesis total."""
    ledger = state.token(token)
    return sum(ledger.balances.values()) + ledger.burned - ledger.minted == ledger.supply_baseline


@contextmanager
def atomic(state: WorldState, *tokens: str) -> Iterator[None]:
    """Restore the ledgers of ``tokens`` and the reserves of every pool trading them on ``Revert``."""
    backups = {token: state.token(token).clone() for token in tokens}
    reserves = {
        pool.id: (pool.reserve_x, pool.reserve_y)
        for token in tokens
        for pool in state.pools_trading(token)
    }
    try:
        yield
    except Revert:
        for token, backup in backups.items():
            ledger = state.token(token)
            ledger.balances = backup.balances
            ledger.burned = backup.burned
            ledger.minted = backup.minted
            ledger.token_supply = backup.token_supply
            ledger.share_supply = backup.share_supply
        for pool_id, (reserve_x, reserve_y) in reserves.items():
            pool = state.pools[pool_id]
            pool.reserve_x, pool.reserve_y = reserve_x, reserve_y
        raise


@contextmanager
def _atomic(state: WorldState, token: str) -> Iterator[TokenLedger]:
    with atomic(state, token):
        yield state.token(token)


def _debit(ledger: TokenLedger, account: str, raw: int) -> None:
    balance = ledger.raw(account)
    if balance < raw:
        raise Revert("insufficient balance")
    ledger.set_raw(account, balance - raw)


def _credit(ledger: TokenLedger, account: str, raw: int) -> None:
    ledger.set_raw(account, checked_add(ledger.raw(account), raw))


def _mint(ledger: TokenLedger, account: str, amount: int) -> None:
    raw = to_raw(ledger, amount)
    _credit(ledger, account, raw)
    ledger.minted = checked_add(ledger.minted, raw)


def _deflate_pool(ledger: TokenLedger, pool: PoolState) -> int:
    deflation = ledger.spec.deflation
    assert deflation is not None
    balance = ledger.raw(pool.account)
    kept = deflation.scale(balance)
    ledger.set_raw(pool.account, kept)
    ledger.burned += balance - kept
    if deflation.rescale_reserve:
        reserve = pool.reserve_of(ledger.spec.id)
        scaled = deflation.scale(reserve)
        if reserve and not scaled:
            raise Revert("reserve depleted")
        pool.set_reserve(ledger.spec.id, scaled)
    return balance - kept


def transfer(state: WorldState, token: str, from_: str, to: str, amount: int) -> TransferOutcome:
    """Move ``amount`` of ``token`` through the behavior pipeline.

    Order: sell-side deflation (``to`` is a pool), reward on pool trades,
    fee deduction, balance movement. A revert at any stage leaves the token
    ledger and its pools' reserves untouched.

    Args:
        state: World to mutate
        token: Token id
        from_: Sender account
        to: Receiver account
        amount: Nominal amount in token units

    Returns:
        Amounts actually debited, credited, charged and minted
    """
    check_uint256(amount)
    with _atomic(state, token) as ledger:
        spec = ledger.spec
        deflated = 0
        if spec.deflation is not None:
            pool = state.pool_at(token, to)
            if pool is not None:
                deflated = _deflate_pool(ledger, pool)

        reward = 0
        reward_to = None
        behavior = spec.reward
        if behavior is not None and amount > behavior.min_amount:
            if state.pool_at(token, from_) is not None:
                reward_to = to
            elif state.pool_at(token, to) is not None:
                reward_to = from_
            if reward_to is not None:
                reward = mul_div(amount, behavior.reward_num, behavior.reward_den)
                _mint(ledger, reward_to, reward)

        fee = 0
        debited = credited = amount
        fee_spec = spec.fee
        if fee_spec is not None:
            fee = fee_spec.fee_for(amount)
            if fee_spec.mode == "inclusive":
                credited = amount - fee
            else:
                debited = checked_add(amount, fee)

        if spec.rebase is not None:
            shares = to_raw(ledger, amount)
            _debit(ledger, from_, shares)
            _credit(ledger, to, shares)
            debited = credited = from_raw(ledger, shares)
        else:
            _debit(ledger, from_, debited)
            _credit(ledger, to, credited)
            if fee:
                if fee_spec.sink == BURN_SINK:
                    ledger.burned += fee
                else:
                    _credit(ledger, fee_spec.sink, fee)

        return TransferOutcome(
            debited=debited,
            credited=credited,
            fee=fee,
            reward=reward,
            reward_to=reward_to,
            deflated=deflated,
        )


def burn(state: WorldState, token: str, caller: str, from_: str, amount: int) -> None:
    """Destroy ``amount`` of ``from_``'s tokens. Pool reserves are left for ``sync``."""
    check_uint256(amount)
    with _atomic(state, token) as ledger:
        capability = ledger.spec.public_burn
        if caller != from_ and (capability is None or not capability.anyone_can_burn_from):
            raise Revert("unauthorized")
        if capability is None:
            raise Revert("burn not supported")
        raw = to_raw(ledger, amount)
        _debit(ledger, from_, raw)
        ledger.burned += raw


def invoke_hook(state: WorldState, token: str, name: str, caller: str) -> None:
    """Run the no-argument hook ``name`` of ``token`` on behalf of ``caller``."""
    with _atomic(state, token) as ledger:
        hook = ledger.spec.get_hook(name)
        if hook is None:
            raise UnknownEntityError(f"unknown hook {name} on token {token}")

        if hook.effect.kind == "rebase_maintenance":
            rebase = ledger.spec.rebase
            assert rebase is not None
            if ledger.raw(caller) <= rebase.min_caller_share:
                raise Revert("caller share below minimum")
            token_supply = ledger.token_supply * rebase.scale_num // rebase.scale_den
            share_supply = ledger.share_supply * rebase.scale_num // rebase.scale_den
            if not token_supply or not share_supply:
                raise Revert("supply exhausted")
            ledger.token_supply = token_supply
            ledger.share_supply = share_supply
            # Rewarded in shares, not tokens.
            _credit(ledger, caller, rebase.maintain_reward)
            ledger.minted = checked_add(ledger.minted, rebase.maintain_reward)
        elif hook.effect.kind == "pool_deflation":
            for pool in state.pools_trading(token):
                _deflate_pool(ledger, pool)

