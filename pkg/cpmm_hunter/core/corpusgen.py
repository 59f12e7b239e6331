"""Seeded synthetic corpus generator.

Produces one pool per token instance, each paired with the stablecoin, with a
ground-truth label. Vulnerable archetypes are parameterized inside ranges
where the flaw is exploitable; benign ones never are.
"""

import random
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Tuple, Union

from cpmm_hunter.core.models import (
    AttackerSpec,
    Corpus,
    CorpusToken,
    PoolLabel,
    PoolSpec,
    PriceSpec,
)
from cpmm_hunter.errors import CorpusError
from cpmm_hunter.logger import get_logger

logger = get_logger()

E18 = 10**18
STABLE = "USDT"
ATTACKER = "attacker"

ARCHETYPES = ("anch", "shadowfi", "deflate", "rebase", "benign", "benign_fot")

# archetype -> (vulnerable, broken invariant)
LABELS: Dict[str, Tuple[bool, object]] = {
    "anch": (True, 2),
    "shadowfi": (True, 1),
    "deflate": (True, 1),
    "rebase": (True, 2),
    "benign": (False, None),
    "benign_fot": (False, None),
}


def _whole(rng: random.Random, low: int, high: int) -> int:
    return rng.randint(low, high) * E18


def _anch(rng: random.Random, token_id: str) -> Tuple[dict, int, int]:
    reserve_x = _whole(rng, 20_000, 60_000)
    reserve_y = _whole(rng, 2_000_000, 10_000_000)
    token = {
        "id": token_id,
        "total_supply": reserve_y * 2,
        "behavior": {
            "kind": "reward_on_dex_trade",
            "reward_num": rng.randint(5, 10),
            "reward_den": 10_000,
            "min_amount": 10_000 * E18,
        },
    }
    return token, reserve_x, reserve_y


def _shadowfi(rng: random.Random, token_id: str) -> Tuple[dict, int, int]:
    reserve_x = _whole(rng, 10_000, 50_000)
    reserve_y = _whole(rng, 1_000_000, 5_000_000)
    token = {
        "id": token_id,
        "total_supply": reserve_y * 2,
        "behavior": {"kind": "public_burn", "anyone_can_burn_from": True},
    }
    return token, reserve_x, reserve_y


def _deflate(rng: random.Random, token_id: str) -> Tuple[dict, int, int]:
    reserve_x = _whole(rng, 10_000, 50_000)
    reserve_y = _whole(rng, 1_000_000, 5_000_000)
    token = {
        "id": token_id,
        "total_supply": reserve_y * 2,
        "behavior": {"kind": "sell_side_deflation", "burn_num": rng.randint(1, 3), "burn_den": 20},
    }
    return token, reserve_x, reserve_y


def _rebase(rng: random.Random, token_id: str) -> Tuple[dict, int, int]:
    reserve_x = _whole(rng, 40_000, 100_000)
    reserve_y = _whole(rng, 1_000_000, 5_000_000)
    supply = reserve_y * 2
    token = {
        "id": token_id,
        "total_supply": supply,
        "behavior": {
            "kind": "share_rebase",
            "initial_token_supply": supply,
            "initial_share_supply": supply,
            "maintain_reward": reserve_y * 5 // 100_000,
            "min_caller_share": 1_000 * E18,
            "scale_num": 9,
            "scale_den": 10,
        },
        "hooks": [{"name": "maintainToken", "effect": {"kind": "rebase_maintenance"}}],
    }
    return token, reserve_x, reserve_y


def _benign(rng: random.Random, token_id: str) -> Tuple[dict, int, int]:
    reserve_x = _whole(rng, 5_000, 50_000)
    reserve_y = _whole(rng, 100_000, 10_000_000)
    token = {"id": token_id, "total_supply": reserve_y * 2, "behavior": {"kind": "standard"}}
    return token, reserve_x, reserve_y


def _benign_fot(rng: random.Random, token_id: str) -> Tuple[dict, int, int]:
    reserve_x = _whole(rng, 5_000, 50_000)
    reserve_y = _whole(rng, 100_000, 10_000_000)
    # Pools pay the fee on what they send, capped near 0.001 USD per transfer.
    token = {
        "id": token_id,
        "total_supply": reserve_y * 2,
        "behavior": {
            "kind": "fee_on_transfer",
            "rate_bps": rng.randint(100, 1_000),
            "mode": "exclusive",
            "sink": rng.choice(["burn", "treasury"]),
            "max_fee": reserve_y // reserve_x * 10**15,
        },
    }
    return token, reserve_x, reserve_y


_BUILDERS: Dict[str, Callable[[random.Random, str], Tuple[dict, int, int]]] = {
    "anch": _anch,
    "shadowfi": _shadowfi,
    "deflate": _deflate,
    "rebase": _rebase,
    "benign": _benign,
    "benign_fot": _benign_fot,
}


def generate_corpus(seed: int, counts: Mapping[str, int]) -> Corpus:
    """Generate a deterministic labeled corpus.

    Args:
        seed: Seed for every random choice
        counts: Instances per archetype (missing archetypes default to 0)

    Returns:
        Validated corpus

    Raises:
        CorpusError: On an unknown archetype or a negative count
    """
    for archetype, count in counts.items():
        if archetype not in _BUILDERS:
            raise CorpusError(f"unknown archetype {archetype}")
        if count < 0:
            raise CorpusError(f"count for {archetype} must not be negative")

    rng = random.Random(seed)
    tokens: List[dict] = []
    pools: List[dict] = []
    for archetype in ARCHETYPES:
        for index in range(counts.get(archetype, 0)):
            token_id = f"{archetype.upper()}{index + 1:03d}"
            token, reserve_x, reserve_y = _BUILDERS[archetype](rng, token_id)
            vulnerable, invariant = LABELS[archetype]
            tokens.append(token)
            pools.append(
                {
                    "id": f"{STABLE}-{token_id}",
                    "token_x": STABLE,
                    "token_y": token_id,
                    "reserve_x": reserve_x,
                    "reserve_y": reserve_y,
                    "label": {"vulnerable": vulnerable, "archetype": archetype, "invariant": invariant},
                }
            )

    max_reserve = max((pool["reserve_x"] for pool in pools), default=0)
    endowment = 2 * max_reserve + 1_000 * E18
    stable_supply = sum(pool["reserve_x"] for pool in pools) + endowment + 1_000_000 * E18

    corpus = Corpus(
        attacker=AttackerSpec(id=ATTACKER, endowments={STABLE: endowment}),
        tokens=[CorpusToken(id=STABLE, total_supply=stable_supply)]
        + [CorpusToken.model_validate(token) for token in tokens],
        pools=[PoolSpec(**{**pool, "label": PoolLabel(**pool["label"])}) for pool in pools],
        prices={STABLE: PriceSpec(num=1, den=1)},
    )
    logger.info(f"Generated corpus with {len(pools)} pools (seed {seed})")
    return corpus


def write_corpus(corpus: Corpus, path: Union[str, Path]) -> Path:
    """Write a corpus as JSON with amounts as decimal strings."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(corpus.model_dump_json(indent=2, by_alias=True) + "\n", encoding="utf-8")
    logger.info(f"Wrote corpus to {path}")
    return path
