"""Token specification and ledger state models."""

from dataclasses import dataclass, field
from typing import Annotated, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from cpmm_hunter.amounts import Amount

BURN_SINK = "burn"


class _Spec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


class StandardBehavior(_Spec):
    """Plain token with no transfer side effects."""

    kind: Literal["standard"] = "standard"


class FeeOnTransferBehavior(_Spec):
    """Deducts ``rate_bps`` of every transfer, at most ``max_fee`` per transfer.

    Inclusive fees come out of the transferred amount; exclusive fees are
    charged to the sender on top of it, so a pool sending tokens pays the fee
    out of its own balance. The fee goes to ``sink`` (an account id, or
    ``"burn"``).
    """

    kind: Literal["fee_on_transfer"]
    rate_bps: int
    mode: Literal["inclusive", "exclusive"] = "inclusive"
    sink: str = BURN_SINK
    max_fee: Optional[Amount] = None

    @field_validator("rate_bps")
    @classmethod
    def _check_rate(cls, v: int) -> int:
        if v < 0 or v > 10_000:
            raise ValueError("rate_bps out of range")
        return v

    def fee_for(self, amount: int) -> int:
        fee = amount * self.rate_bps // 10_000
        if self.max_fee is not None:
            return min(fee, self.max_fee)
        return fee


class RewardOnDexTradeBehavior(_Spec):
    """Mints ``amount * reward_num / reward_den`` to the non-pool party of a pool transfer."""

    kind: Literal["reward_on_dex_trade"]
    reward_num: int = Field(ge=0)
    reward_den: int
    min_amount: Amount = 0

    @field_validator("reward_den")
    @classmethod
    def _check_den(cls, v: int) -> int:
        if v <= 0:
            raise ValueError("reward_den must be positive")
        return v


class PublicBurnBehavior(_Spec):
    kind: Literal["public_burn"]
    anyone_can_burn_from: bool = False


class SellSideDeflationBehavior(_Spec):
    """Scales the pool's balance by ``(burn_den - burn_num) / burn_den`` before each transfer into it."""

    kind: Literal["sell_side_deflation"]
    burn_num: int
    burn_den: int
    rescale_reserve: bool = True

    @model_validator(mode="after")
    def _check_ratio(self) -> "SellSideDeflationBehavior":
        if not 0 <= self.burn_num < self.burn_den:
            raise ValueError("burn_num/burn_den out of range (need burn_den > burn_num >= 0)")
        return self

    def scale(self, amount: int) -> int:
        return amount * (self.burn_den - self.burn_num) // self.burn_den


class ShareRebaseBehavior(_Spec):
    """Balances are shares worth ``token_supply / share_supply`` tokens each."""

    kind: Literal["share_rebase"]
    initial_token_supply: Amount
    initial_share_supply: Amount
    maintain_reward: Amount = 0
    min_caller_share: Amount = 0
    scale_num: int
    scale_den: int

    @model_validator(mode="after")
    def _check_supplies(self) -> "ShareRebaseBehavior":
        if self.initial_token_supply == 0 or self.initial_share_supply == 0:
            raise ValueError("initial supplies must be positive")
        if not 0 < self.scale_num < self.scale_den:
            raise ValueError("scale_num/scale_den out of range (need scale_den > scale_num > 0)")
        return self


Behavior = Annotated[
    Union[
        StandardBehavior,
        FeeOnTransferBehavior,
        RewardOnDexTradeBehavior,
        PublicBurnBehavior,
        SellSideDeflationBehavior,
        ShareRebaseBehavior,
    ],
    Field(discriminator="kind"),
]

BEHAVIOR_KINDS = (
    "standard",
    "fee_on_transfer",
    "reward_on_dex_trade",
    "public_burn",
    "sell_side_deflation",
    "share_rebase",
)

# Behaviors that rewrite the moved amount; combining them has no defined order.
EXCLUSIVE_KINDS = ("fee_on_transfer", "sell_side_deflation", "share_rebase")


class RebaseMaintenanceEffect(_Spec):
    kind: Literal["rebase_maintenance"]


class PoolDeflationEffect(_Spec):
    kind: Literal["pool_deflation"]


HookEffect = Annotated[
    Union[RebaseMaintenanceEffect, PoolDeflationEffect],
    Field(discriminator="kind"),
]

HOOK_EFFECT_KINDS = ("rebase_maintenance", "pool_deflation")

_EFFECT_REQUIRES = {
    "rebase_maintenance": "share_rebase",
    "pool_deflation": "sell_side_deflation",
}


class HookSpec(_Spec):
    """A named no-argument call exposed by the token."""

    name: str = Field(min_length=1)
    effect: HookEffect


class TokenSpec(_Spec):
    """Declarative token model."""

    id: str = Field(min_length=1)
    decimals: int = Field(18, ge=0, le=77)
    total_supply: Amount
    behavior: List[Behavior] = Field(default_factory=list)
    hooks: List[HookSpec] = Field(default_factory=list)

    @field_validator("behavior", mode="before")
    @classmethod
    def _behavior_as_list(cls, v):
        # A single behavior object is the common case in documents.
        if v is None:
            return []
        if isinstance(v, dict):
            return [v]
        return v

    @model_validator(mode="after")
    def _check_composition(self) -> "TokenSpec":
        kinds = [b.kind for b in self.behavior]
        for kind in set(kinds):
            if kinds.count(kind) > 1:
                raise ValueError(f"behavior: duplicate behavior kind {kind}")
        exclusive = [k for k in kinds if k in EXCLUSIVE_KINDS]
        if len(exclusive) > 1:
            raise ValueError(
                f"behavior: at most one of {', '.join(EXCLUSIVE_KINDS)} (got {', '.join(exclusive)})"
            )

        names = [h.name for h in self.hooks]
        if len(set(names)) != len(names):
            raise ValueError("hooks: duplicate hook name")
        for hook in self.hooks:
            required = _EFFECT_REQUIRES[hook.effect.kind]
            if required not in kinds:
                raise ValueError(
                    f"hooks: hook {hook.name} needs a {required} behavior for effect {hook.effect.kind}"
                )

        rebase = self.rebase
        if rebase is not None and rebase.initial_token_supply != self.total_supply:
            raise ValueError("total_supply must equal initial_token_supply for share_rebase tokens")
        return self

    def get_behavior(self, kind: str) -> Optional[BaseModel]:
        for b in self.behavior:
            if b.kind == kind:
                return b
        return None

    @property
    def fee(self) -> Optional[FeeOnTransferBehavior]:
        return self.get_behavior("fee_on_transfer")  # type: ignore[return-value]

    @property
    def reward(self) -> Optional[RewardOnDexTradeBehavior]:
        return self.get_behavior("reward_on_dex_trade")  # type: ignore[return-value]

    @property
    def public_burn(self) -> Optional[PublicBurnBehavior]:
        return self.get_behavior("public_burn")  # type: ignore[return-value]

    @property
    def deflation(self) -> Optional[SellSideDeflationBehavior]:
        return self.get_behavior("sell_side_deflation")  # type: ignore[return-value]

    @property
    def rebase(self) -> Optional[ShareRebaseBehavior]:
        return self.get_behavior("share_rebase")  # type: ignore[return-value]

    @property
    def has_exclusive_fee(self) -> bool:
        return self.fee is not None and self.fee.mode == "exclusive"

    def get_hook(self, name: str) -> Optional[HookSpec]:
        for hook in self.hooks:
            if hook.name == name:
                return hook
        return None


@dataclass
class TokenLedger:
    """Mutable balances of one token.

    ``balances`` holds raw units: shares for share-rebase tokens, base units
    otherwise. Zero balances are not stored, so equal ledgers compare equal.
    """

    spec: TokenSpec
    balances: Dict[str, int] = field(default_factory=dict)
    burned: int = 0
    minted: int = 0
    supply_baseline: int = 0
    token_supply: int = 0
    share_supply: int = 0

    def raw(self, account: str) -> int:
        return self.balances.get(account, 0)

    def set_raw(self, account: str, value: int) -> None:
        if value:
            self.balances[account] = value
        else:
            self.balances.pop(account, None)

    def clone(self) -> "TokenLedger":
        return TokenLedger(
            spec=self.spec,
            balances=dict(self.balances),
            burned=self.burned,
            minted=self.minted,
            supply_baseline=self.supply_baseline,
            token_supply=self.token_supply,
            share_supply=self.share_supply,
        )


class TransferOutcome(BaseModel):
    """What a transfer actually did, in token units."""

    debited: int
    credited: int
    fee: int = 0
    reward: int = 0
    reward_to: Optional[str] = None
    deflated: int = 0
