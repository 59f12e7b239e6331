"""Tests for the invariant and profit oracles."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cpmm_hunter.execution import Snapshot
from cpmm_hunter.ledger import burn, transfer
from cpmm_hunter.oracle import PriceTable, check_invariant1, check_invariant2, evaluate_profit
from tests.conftest import E18, build_target

POOL = "USDT-TKN"
PRICES = PriceTable({"USDT": Fraction(1)})


def _moved(world, *moves):
    after = world.clone()
    for token, sender, receiver, amount in moves:
        transfer(after, token, sender, receiver, amount)
    return Snapshot.of(after)


def test_price_table():
    """Test USD valuation and price validation."""
    assert PRICES.usd("USDT", 5 * E18, 18) == 5
    assert PRICES.usd("TKN", E18, 18) is None
    assert PriceTable({"A": Fraction(3, 2)}).usd("A", 2_500_000, 6) == Fraction(15, 4)
    with pytest.raises(ValueError):
        PriceTable({"USDT": Fraction(0)})


def test_invariant1_pool_balance_decrease():
    """Test that burning pool tokens breaks invariant 1 and a plain body does not."""
    world = build_target(behavior={"kind": "public_burn", "anyone_can_burn_from": True}).world
    before = Snapshot.of(world)
    drained = world.clone()
    burn(drained, "TKN", "attacker", POOL, 10)

    assert check_invariant1(before, Snapshot.of(drained), POOL, "TKN")
    assert not check_invariant1(before, before, POOL, "TKN")


def test_invariant2_attacker_balance_increase():
    """Test that free tokens for the attacker break invariant 2."""
    world = build_target().world
    before = Snapshot.of(world)
    gifted = _moved(world, ("TKN", "deployer", "attacker", 30))

    assert check_invariant2(before, gifted, "attacker", "TKN")
    assert not check_invariant2(before, before, "attacker", "TKN")
    assert not check_invariant2(gifted, before, "attacker", "TKN")


def test_evaluate_profit_gain_above_threshold():
    """Test a five dollar gain with nothing lost is profitable."""
    world = build_target().world
    initial = Snapshot.of(world)
    final = _moved(world, ("USDT", "deployer", "attacker", 5 * E18))
    verdict = evaluate_profit(initial, final, "attacker", PRICES, 1)

    assert verdict.profitable
    assert verdict.profit_token == "USDT"
    assert verdict.profit_amount == 5 * E18
    assert verdict.profit_usd == 5


def test_evaluate_profit_needs_to_beat_threshold():
    """Test gains at or under the threshold are not profitable."""
    world = build_target().world
    initial = Snapshot.of(world)
    final = _moved(world, ("USDT", "deployer", "attacker", E18))
    assert not evaluate_profit(initial, final, "attacker", PRICES, 1).profitable
    assert evaluate_profit(initial, final, "attacker", PRICES, Fraction(1, 2)).profitable


def test_evaluate_profit_any_loss_voids():
    """Test a gain paid for with another token is not a profit."""
    world = build_target().world
    transfer(world, "TKN", "deployer", "attacker", 10)
    initial = Snapshot.of(world)
    final = _moved(world, ("USDT", "deployer", "attacker", 10 * E18), ("TKN", "attacker", "deployer", 1))
    assert not evaluate_profit(initial, final, "attacker", PRICES, 1).profitable


def test_evaluate_profit_unpriceable():
    """Test a gain in an unpriced token is flagged, not counted."""
    world = build_target().world
    initial = Snapshot.of(world)
    final = _moved(world, ("TKN", "deployer", "attacker", 10 * E18))
    verdict = evaluate_profit(initial, final, "attacker", PRICES, 1)

    assert verdict.unpriceable
    assert not verdict.profitable
    assert verdict.profit_token == "TKN"


def test_evaluate_profit_ignores_unpriced_dust():
    """Test unpriced dust next to a real gain keeps the gain."""
    world = build_target().world
    initial = Snapshot.of(world)
    final = _moved(world, ("USDT", "deployer", "attacker", 3 * E18), ("TKN", "deployer", "attacker", 7))
    verdict = evaluate_profit(initial, final, "attacker", PRICES, 1)

    assert verdict.profitable
    assert verdict.profit_token == "USDT"


THRESHOLD_WORLD = build_target().world


@given(
    gain=st.integers(min_value=0, max_value=100 * E18),
    low=st.fractions(min_value=0, max_value=100),
    raise_by=st.fractions(min_value=0, max_value=100),
)
def test_threshold_is_monotone(gain, low, raise_by):
    """Test raising the threshold never turns a loss-free gain profitable."""
    initial = Snapshot.of(THRESHOLD_WORLD)
    final = _moved(THRESHOLD_WORLD, ("USDT", "deployer", "attacker", gain))
    at_low = evaluate_profit(initial, final, "attacker", PRICES, low)
    at_high = evaluate_profit(initial, final, "attacker", PRICES, low + raise_by)
    assert at_low.profitable or not at_high.profitable
