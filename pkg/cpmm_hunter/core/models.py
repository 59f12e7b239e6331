"""Corpus and report file models."""

from fractions import Fraction
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from cpmm_hunter.amounts import Amount
from cpmm_hunter.ledger.models import TokenSpec
from cpmm_hunter.synth.models import ScanVerdict

DEPLOYER = "deployer"


class AttackerSpec(BaseModel):
    """The attacker account and its genesis endowments."""

    id: str = "attacker"
    endowments: Dict[str, Amount] = Field(default_factory=dict)


class CorpusToken(TokenSpec):
    """A token specification plus its genesis holders."""

    holders: Dict[str, Amount] = Field(default_factory=dict)

    def to_spec(self) -> TokenSpec:
        return TokenSpec.model_validate(self.model_dump(exclude={"holders"}))


class PoolLabel(BaseModel):
    """Ground truth for evaluation."""

    vulnerable: bool
    archetype: str
    invariant: Optional[int] = None


class PoolSpec(BaseModel):
    id: str = Field(min_length=1)
    token_x: str
    token_y: str
    reserve_x: Amount
    reserve_y: Amount
    fee_num: int = 997
    fee_den: int = 1000
    account: Optional[str] = None
    label: Optional[PoolLabel] = None

    @model_validator(mode="after")
    def _check_pool(self) -> "PoolSpec":
        if self.token_x == self.token_y:
            raise ValueError("token_x and token_y must differ")
        if not self.reserve_x or not self.reserve_y:
            raise ValueError("reserves must be positive")
        if not 0 < self.fee_num <= self.fee_den:
            raise ValueError("need 0 < fee_num <= fee_den")
        return self

    @property
    def ledger_account(self) -> str:
        return self.account or self.id


class PriceSpec(BaseModel):
    num: Amount
    den: Amount = 1

    @model_validator(mode="after")
    def _check_price(self) -> "PriceSpec":
        if not self.num or not self.den:
            raise ValueError("price num and den must be positive")
        return self

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)


class Corpus(BaseModel):
    """One self-contained scan input: tokens, pools, prices and the attacker."""

    attacker: AttackerSpec = Field(default_factory=AttackerSpec)
    tokens: List[CorpusToken] = Field(default_factory=list)
    pools: List[PoolSpec] = Field(default_factory=list)
    prices: Dict[str, PriceSpec] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_references(self) -> "Corpus":
        token_ids = [t.id for t in self.tokens]
        duplicates = sorted({t for t in token_ids if token_ids.count(t) > 1})
        if duplicates:
            raise ValueError(f"duplicate token ids: {', '.join(duplicates)}")
        pool_ids = [p.id for p in self.pools]
        duplicates = sorted({p for p in pool_ids if pool_ids.count(p) > 1})
        if duplicates:
            raise ValueError(f"duplicate pool ids: {', '.join(duplicates)}")

        known = set(token_ids)
        for pool in self.pools:
            for token in (pool.token_x, pool.token_y):
                if token not in known:
                    raise ValueError(f"pool {pool.id} references unknown token {token}")
        for token in self.attacker.endowments:
            if token not in known:
                raise ValueError(f"attacker endowment references unknown token {token}")
        for token in self.prices:
            if token not in known:
                raise ValueError(f"price references unknown token {token}")

        traded_y = {pool.token_y for pool in self.pools}
        for token in traded_y:
            held = self.attacker.endowments.get(token, 0) + self.token(token).holders.get(
                self.attacker.id, 0
            )
            if held:
                raise ValueError(f"attacker must start with zero {token}")

        for token in self.tokens:
            allocated = sum(token.holders.values()) + self.attacker.endowments.get(token.id, 0)
            for pool in self.pools:
                if pool.token_x == token.id:
                    allocated += pool.reserve_x
                elif pool.token_y == token.id:
                    allocated += pool.reserve_y
            if allocated > token.total_supply:
                raise ValueError(
                    f"token {token.id} allocates {allocated} but total_supply is {token.total_supply}"
                )
        return self

    def token(self, token_id: str) -> CorpusToken:
        for token in self.tokens:
            if token.id == token_id:
                return token
        raise KeyError(token_id)


class ReportFile(BaseModel):
    """Scan report written by ``scan`` and read back by ``replay``."""

    engine_version: str
    generated_at: str
    config: Dict[str, Any]
    results: List[ScanVerdict]

    @field_validator("results")
    @classmethod
    def _sorted(cls, v: List[ScanVerdict]) -> List[ScanVerdict]:
        return sorted(v, key=lambda verdict: verdict.target)

    def result_for(self, target: str) -> Optional[ScanVerdict]:
        for verdict in self.results:
            if verdict.target == target:
                return verdict
        return None

