"""Constant-product pool state."""

from dataclasses import dataclass, replace


@dataclass
class PoolState:
    """A CPMM pair.

    Reserves are the pool's last-synced view of its holdings. The ledger
    balances of ``account`` may drift from them; skim and sync reconcile the two.
    """

    id: str
    token_x: str
    token_y: str
    reserve_x: int
    reserve_y: int
    fee_num: int = 997
    fee_den: int = 1000
    account: str = ""

    def __post_init__(self) -> None:
        if not self.account:
            self.account = self.id
        if not 0 < self.fee_num <= self.fee_den:
            raise ValueError(f"pool {self.id}: need 0 < fee_num <= fee_den")
        if self.token_x == self.token_y:
            raise ValueError(f"pool {self.id}: token_x and token_y must differ")

    def trades(self, token: str) -> bool:
        return token in (self.token_x, self.token_y)

    def reserve_of(self, token: str) -> int:
        if token == self.token_x:
            return self.reserve_x
        if token == self.token_y:
            return self.reserve_y
        raise KeyError(token)

    def set_reserve(self, token: str, value: int) -> None:
        if token == self.token_x:
            self.reserve_x = value
        elif token == self.token_y:
            self.reserve_y = value
        else:
            raise KeyError(token)

    def other(self, token: str) -> str:
        return self.token_y if token == self.token_x else self.token_x

    def clone(self) -> "PoolState":
        return replace(self)
