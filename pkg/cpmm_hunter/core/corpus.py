"""Corpus loading, genesis and target filtering."""

from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Union

from pydantic import ValidationError

from cpmm_hunter.errors import CorpusError, SpecError
from cpmm_hunter.ledger.ledger import allocate, balance_of, new_ledger, seal_baseline
from cpmm_hunter.ledger.parser import load_document, validation_issues
from cpmm_hunter.logger import get_logger
from cpmm_hunter.core.models import DEPLOYER, Corpus, PoolSpec
from cpmm_hunter.oracle.models import PriceTable
from cpmm_hunter.pool.models import PoolState
from cpmm_hunter.synth.models import ScanTarget
from cpmm_hunter.world import WorldState

logger = get_logger()


def parse_corpus(text: str) -> Corpus:
    """Validate a corpus document (JSON, or YAML).

    Raises:
        CorpusError: With one ``path: message`` line per problem
    """
    try:
        data = load_document(text)
    except SpecError as e:
        raise CorpusError(str(e)) from e
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise CorpusError("malformed corpus: expected a mapping at the top level")
    try:
        return Corpus.model_validate(data)
    except ValidationError as e:
        lines = [f"{path}: {message}" if path else message for path, message in validation_issues(e)]
        raise CorpusError("\n".join(lines)) from e


def read_corpus(path: Union[str, Path]) -> Corpus:
    """Read and validate a corpus file."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise CorpusError(f"cannot read corpus {path}: {e}") from e
    return parse_corpus(text)


def build_world(corpus: Corpus, token_ids: List[str]) -> WorldState:
    """Genesis state holding ``token_ids`` and every pool trading only those tokens.

    Pools get their reserves, the attacker its endowments, holders their
    balances, and the deployer whatever supply is left.
    """
    wanted = set(token_ids)
    pools = [p for p in corpus.pools if p.token_x in wanted and p.token_y in wanted]
    world = WorldState()

    for token_id in token_ids:
        token = corpus.token(token_id)
        ledger = new_ledger(token.to_spec())
        allocations = dict(token.holders)
        endowment = corpus.attacker.endowments.get(token_id, 0)
        if endowment:
            allocations[corpus.attacker.id] = allocations.get(corpus.attacker.id, 0) + endowment
        for pool in pools:
            if pool.token_x == token_id:
                reserve = pool.reserve_x
            elif pool.token_y == token_id:
                reserve = pool.reserve_y
            else:
                continue
            account = pool.ledger_account
            allocations[account] = allocations.get(account, 0) + reserve

        remainder = token.total_supply - sum(allocations.values())
        if remainder < 0:
            raise CorpusError(f"token {token_id} is allocated beyond its total_supply")
        if remainder:
            allocations[DEPLOYER] = allocations.get(DEPLOYER, 0) + remainder
        for account, amount in allocations.items():
            allocate(ledger, account, amount)
        seal_baseline(ledger)
        world.tokens[token_id] = ledger

    for spec in pools:
        world.pools[spec.id] = _pool_state(world, spec)
    return world


def _pool_state(world: WorldState, spec: PoolSpec) -> PoolState:
    pool = PoolState(
        id=spec.id,
        token_x=spec.token_x,
        token_y=spec.token_y,
        reserve_x=spec.reserve_x,
        reserve_y=spec.reserve_y,
        fee_num=spec.fee_num,
        fee_den=spec.fee_den,
        account=spec.ledger_account,
    )
    # Share conversion can round; reserves start equal to what the pool holds.
    pool.reserve_x = balance_of(world, pool.token_x, pool.account)
    pool.reserve_y = balance_of(world, pool.token_y, pool.account)
    if not pool.reserve_x or not pool.reserve_y:
        raise CorpusError(f"pool {spec.id} starts with an empty reserve")
    return pool


def build_targets(corpus: Corpus) -> List[ScanTarget]:
    """One scan target per pool, each with a private world."""
    prices = PriceTable({token: price.as_fraction() for token, price in corpus.prices.items()})
    targets = []
    for pool in corpus.pools:
        world = build_world(corpus, [pool.token_x, pool.token_y])
        targets.append(
            ScanTarget(
                id=pool.id,
                world=world,
                pool=pool.id,
                token_y=pool.token_y,
                attacker=corpus.attacker.id,
                prices=prices,
                label=pool.label.model_dump() if pool.label else None,
            )
        )
    return targets


def load_corpus(path: Union[str, Path]) -> List[ScanTarget]:
    """Load a corpus file into fully built scan targets.

    Args:
        path: Corpus file (JSON or YAML)

    Returns:
        One target per pool, in corpus order

    Raises:
        CorpusError: If the file is missing, malformed or inconsistent
    """
    corpus = read_corpus(path)
    targets = build_targets(corpus)
    logger.info(f"Loaded {len(targets)} targets from {path}")
    return targets


def pool_usd(target: ScanTarget) -> Optional[Fraction]:
    """USD value of the target pool's token_x reserve, None when unpriced."""
    pool = target.world.pool(target.pool)
    decimals = target.world.token(pool.token_x).spec.decimals
    return target.prices.usd(pool.token_x, pool.reserve_x, decimals)


def filter_targets(
    targets: List[ScanTarget], min_usd: Union[Decimal, Fraction, int] = Decimal("1000")
) -> List[ScanTarget]:
    """Keep targets whose token_x is a priced plain token worth more than ``min_usd`` in the pool."""
    threshold = Fraction(min_usd)
    kept = []
    for target in targets:
        spec = target.world.token(target.token_x).spec
        if any(behavior.kind != "standard" for behavior in spec.behavior):
            continue
        usd = pool_usd(target)
        if usd is not None and usd > threshold:
            kept.append(target)
    logger.info(f"{len(kept)} of {len(targets)} targets pass the {float(threshold):g} USD filter")
    return kept
