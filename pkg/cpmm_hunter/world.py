"""Complete simulated state: token ledgers plus pools."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, List, Optional

from cpmm_hunter.errors import UnknownEntityError

if TYPE_CHECKING:
    from cpmm_hunter.ledger.models import TokenLedger
    from cpmm_hunter.pool.models import PoolState


@dataclass
class WorldState:
    """All ledgers and pools of one scan target.

    A WorldState is owned by one worker at a time. ``clone`` is the only way
    to hand a copy to someone else.
    """

    tokens: Dict[str, TokenLedger] = field(default_factory=dict)
    pools: Dict[str, PoolState] = field(default_factory=dict)

    def clone(self) -> "WorldState":
        return WorldState(
            tokens={tid: ledger.clone() for tid, ledger in self.tokens.items()},
            pools={pid: pool.clone() for pid, pool in self.pools.items()},
        )

    def token(self, token_id: str) -> TokenLedger:
        try:
            return self.tokens[token_id]
        except KeyError:
            raise UnknownEntityError(f"unknown token {token_id}") from None

    def pool(self, pool_id: str) -> PoolState:
        try:
            return self.pools[pool_id]
        except KeyError:
            raise UnknownEntityError(f"unknown pool {pool_id}") from None

    def pools_trading(self, token_id: str) -> List[PoolState]:
        return [pool for pool in self.pools.values() if pool.trades(token_id)]

    def pool_at(self, token_id: str, account: str) -> Optional[PoolState]:
        """Return the pool trading ``token_id`` whose ledger identity is ``account``."""
        for pool in self.pools.values():
            if pool.account == account and pool.trades(token_id):
                return pool
        return None
