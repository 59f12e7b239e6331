"""Tests for constant-product pool math and pair operations."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cpmm_hunter.errors import Revert
from cpmm_hunter.ledger import balance_of, burn, transfer
from cpmm_hunter.pool import get_amount_out, skim, swap_exact_in, sync
from cpmm_hunter.pool.models import PoolState
from tests.conftest import E18, build_target

POOL = "USDT-TKN"


def test_get_amount_out_reference_values():
    """Test swap output against hand-computed values."""
    assert get_amount_out(1_000, 10_000, 10_000) == 906
    assert get_amount_out(40 * E18, 20 * E18, 50 * E18, 1, 1) == 33_333_333_333_333_333_333
    assert get_amount_out(0, 10_000, 10_000) == 0


def test_get_amount_out_empty_reserve():
    """Test that an empty reserve reverts."""
    with pytest.raises(Revert, match="insufficient liquidity"):
        get_amount_out(1, 0, 10)


def test_pool_state_validation():
    """Test pool construction rules."""
    assert PoolState(id="P", token_x="A", token_y="B", reserve_x=1, reserve_y=1).account == "P"
    with pytest.raises(ValueError):
        PoolState(id="P", token_x="A", token_y="A", reserve_x=1, reserve_y=1)
    with pytest.raises(ValueError):
        PoolState(id="P", token_x="A", token_y="B", reserve_x=1, reserve_y=1, fee_num=0)


def test_swap_exact_in_updates_reserves():
    """Test a buy pays out and resynchronizes reserves."""
    world = build_target(reserve_x=20 * E18, reserve_y=50 * E18, fee_num=1, fee_den=1).world
    out = swap_exact_in(world, POOL, "USDT", 40 * E18, "attacker", "attacker")
    pool = world.pool(POOL)

    assert out == 33_333_333_333_333_333_333
    assert balance_of(world, "TKN", "attacker") == out
    assert (pool.reserve_x, pool.reserve_y) == (60 * E18, 50 * E18 - out)


def test_swap_counts_excess_as_input():
    """Test tokens already left in the pool are priced as part of the input."""
    world = build_target(reserve_x=1_000 * E18, reserve_y=1_000 * E18).world
    transfer(world, "USDT", "attacker", POOL, 10 * E18)
    out = swap_exact_in(world, POOL, "USDT", 10 * E18, "attacker", "attacker")
    assert out == get_amount_out(20 * E18, 1_000 * E18, 1_000 * E18)


def test_swap_zero_output_reverts():
    """Test a dust input reverts and leaves no trace."""
    world = build_target(reserve_x=1_000 * E18, reserve_y=1_000).world
    before = world.clone()
    with pytest.raises(Revert, match="insufficient output"):
        swap_exact_in(world, POOL, "USDT", 1, "attacker", "attacker")
    assert world.tokens["USDT"] == before.tokens["USDT"]
    assert world.tokens["TKN"] == before.tokens["TKN"]
    assert world.pools == before.pools
    assert balance_of(world, "USDT", POOL) == 1_000 * E18


def test_fee_on_transfer_swap_prices_net_input():
    """Test a 5% inclusive fee is taken before the pool prices the sale."""
    world = build_target(
        behavior={"kind": "fee_on_transfer", "rate_bps": 500}, reserve_x=1_000 * E18, reserve_y=1_000 * E18
    ).world
    out = swap_exact_in(world, POOL, "TKN", 100 * E18, "deployer", "deployer")
    pool = world.pool(POOL)

    assert out == get_amount_out(95 * E18, 1_000 * E18, 1_000 * E18)
    assert pool.reserve_y == 1_095 * E18
    assert pool.reserve_x == 1_000 * E18 - out


def test_swap_untraded_token_reverts():
    """Test swapping a token the pool does not trade."""
    world = build_target().world
    with pytest.raises(Revert):
        swap_exact_in(world, POOL, "DAI", 1, "attacker", "attacker")


def test_skim_and_sync():
    """Test skim pays out the excess and sync adopts balances."""
    world = build_target(reserve_x=100 * E18, reserve_y=100 * E18).world
    transfer(world, "TKN", "deployer", POOL, 5 * E18)

    assert skim(world, POOL, "alice") == (0, 5 * E18)
    assert balance_of(world, "TKN", "alice") == 5 * E18
    assert world.pool(POOL).reserve_y == 100 * E18

    transfer(world, "TKN", "deployer", POOL, 7 * E18)
    sync(world, POOL)
    assert world.pool(POOL).reserve_y == 107 * E18
    assert skim(world, POOL, "alice") == (0, 0)


def test_skim_with_deficit_sends_nothing():
    """Test a pool holding less than its reserve skims zero."""
    world = build_target(behavior={"kind": "public_burn", "anyone_can_burn_from": True}).world
    burn(world, "TKN", "attacker", POOL, 10)
    assert skim(world, POOL, "attacker") == (0, 0)


def test_skim_revert_undoes_both_tokens():
    """Test a skim whose second transfer reverts returns the first one too."""
    world = build_target(
        behavior={"kind": "fee_on_transfer", "rate_bps": 10_000, "mode": "exclusive"},
        reserve_y=1,
        token_supply=10_000,
    ).world
    transfer(world, "TKN", "deployer", POOL, 100)
    transfer(world, "USDT", "attacker", POOL, 5 * E18)
    before = world.clone()

    with pytest.raises(Revert, match="insufficient balance"):
        skim(world, POOL, "alice")
    assert balance_of(world, "USDT", "alice") == 0
    assert world.tokens["USDT"] == before.tokens["USDT"]
    assert world.tokens["TKN"] == before.tokens["TKN"]
    assert world.pools == before.pools


def test_sync_to_zero_reverts():
    """Test sync refuses an emptied pool."""
    world = build_target(behavior={"kind": "public_burn", "anyone_can_burn_from": True}, reserve_y=10).world
    burn(world, "TKN", "attacker", POOL, 10)
    with pytest.raises(Revert, match="sync to zero reserve"):
        sync(world, POOL)


@given(
    reserve_in=st.integers(min_value=1, max_value=10**30),
    reserve_out=st.integers(min_value=1, max_value=10**30),
    amount_in=st.integers(min_value=0, max_value=10**30),
    fee_num=st.integers(min_value=1, max_value=1000),
)
def test_constant_product_never_decreases(reserve_in, reserve_out, amount_in, fee_num):
    """Test that k = x*y does not shrink across a swap with any fee."""
    out = get_amount_out(amount_in, reserve_in, reserve_out, fee_num, 1000)
    assert 0 <= out < reserve_out
    assert (reserve_in + amount_in) * (reserve_out - out) >= reserve_in * reserve_out


@given(
    reserve_in=st.integers(min_value=1, max_value=10**30),
    reserve_out=st.integers(min_value=1, max_value=10**30),
    amount_in=st.integers(min_value=0, max_value=10**30),
)
def test_constant_product_growth_is_bounded_without_fee(reserve_in, reserve_out, amount_in):
    """Test a fee-free swap raises k by no more than the rounding on the input side."""
    out = get_amount_out(amount_in, reserve_in, reserve_out, 1000, 1000)
    growth = (reserve_in + amount_in) * (reserve_out - out) - reserve_in * reserve_out
    assert 0 <= growth <= reserve_in + amount_in


@given(
    reserve_x=st.integers(min_value=1, max_value=10**30),
    reserve_y=st.integers(min_value=1, max_value=10**30),
    amount_in=st.integers(min_value=0, max_value=10**30),
)
def test_round_trip_never_gains(reserve_x, reserve_y, amount_in):
    """Test selling X for Y and straight back returns at most the input."""
    out_y = get_amount_out(amount_in, reserve_x, reserve_y)
    back = get_amount_out(out_y, reserve_x + amount_in, reserve_y - out_y)
    assert back <= amount_in


SKIM_TARGET = build_target(reserve_x=1_000 * E18, reserve_y=1_000 * E18)


@given(
    excess_x=st.integers(min_value=0, max_value=1_000 * E18),
    excess_y=st.integers(min_value=0, max_value=1_000 * E18),
)
def test_skim_keeps_reserves(excess_x, excess_y):
    """Test skim pays out exactly the excess and leaves balances equal to reserves."""
    world = SKIM_TARGET.world.clone()
    transfer(world, "USDT", "attacker", POOL, excess_x)
    transfer(world, "TKN", "deployer", POOL, excess_y)

    assert skim(world, POOL, "alice") == (excess_x, excess_y)
    pool = world.pool(POOL)
    assert (pool.reserve_x, pool.reserve_y) == (1_000 * E18, 1_000 * E18)
    assert balance_of(world, "USDT", POOL) == pool.reserve_x
    assert balance_of(world, "TKN", POOL) == pool.reserve_y
