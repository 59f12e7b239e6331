"""Price table and verdict models."""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Tuple

from cpmm_hunter.amounts import to_usd


class PriceTable(Mapping[str, Fraction]):
    """USD price per whole token, as exact fractions."""

    def __init__(self, prices: Optional[Mapping[str, Fraction]] = None):
        self._prices: Dict[str, Fraction] = {}
        for token, price in (prices or {}).items():
            price = Fraction(price)
            if price <= 0:
                raise ValueError(f"price of {token} must be positive")
            self._prices[token] = price

    def __getitem__(self, token: str) -> Fraction:
        return self._prices[token]

    def __iter__(self) -> Iterator[str]:
        return iter(self._prices)

    def __len__(self) -> int:
        return len(self._prices)

    def usd(self, token: str, amount: int, decimals: int) -> Optional[Fraction]:
        """USD value of ``amount`` base units, or None if the token has no price."""
        price = self._prices.get(token)
        if price is None:
            return None
        return to_usd(amount, decimals, price)


@dataclass(frozen=True)
class Verdict:
    """Invariant and profit judgement for one executed transaction."""

    invariant1_broken: bool = False
    invariant2_broken: bool = False
    profitable: bool = False
    unpriceable: bool = False
    profit_token: Optional[str] = None
    profit_amount: int = 0
    profit_usd: Fraction = Fraction(0)

    @property
    def broken_invariants(self) -> Tuple[int, ...]:
        return tuple(
            number
            for number, broken in ((1, self.invariant1_broken), (2, self.invariant2_broken))
            if broken
        )

    @property
    def breaks_invariant(self) -> bool:
        return self.invariant1_broken or self.invariant2_broken
