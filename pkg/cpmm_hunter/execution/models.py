"""Symbolic calls, execution traces and snapshots."""

from dataclasses import dataclass, field
from typing import Annotated, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

from cpmm_hunter.amounts import Amount
from cpmm_hunter.ledger.ledger import balance_of
from cpmm_hunter.world import WorldState

SELF = "self"
PAIR = "pair"


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)


# Symbolic arguments


class ConstantArg(_Frozen):
    kind: Literal["constant"] = "constant"
    value: Amount

    def describe(self) -> str:
        return str(self.value)


class BalanceOfSelf(_Frozen):
    kind: Literal["balance_of_self"] = "balance_of_self"
    token: str

    def describe(self) -> str:
        return f"{self.token}.balanceOf(this)"


class BalanceOfPair(_Frozen):
    kind: Literal["balance_of_pair"] = "balance_of_pair"
    token: str

    def describe(self) -> str:
        return f"{self.token}.balanceOf(pair)"


class PairBalanceMinusOne(_Frozen):
    kind: Literal["pair_balance_minus_one"] = "pair_balance_minus_one"
    token: str

    def describe(self) -> str:
        return f"{self.token}.balanceOf(pair) - 1"


class BurnSupplyFormula(_Frozen):
    """``totalSupply() - 2 * totalSupply() / balanceOf(pair)``, taken as written."""

    kind: Literal["burn_supply_formula"] = "burn_supply_formula"
    token: str

    def describe(self) -> str:
        return f"{self.token}.totalSupply() - 2 * {self.token}.totalSupply() / {self.token}.balanceOf(pair)"


class FeeAdjusted(_Frozen):
    """Largest amount whose exclusive fee still fits in ``inner``."""

    kind: Literal["fee_adjusted"] = "fee_adjusted"
    token: str
    inner: "SymbolicArg"

    def describe(self) -> str:
        return f"feeAdjusted({self.inner.describe()})"


SymbolicArg = Annotated[
    Union[ConstantArg, BalanceOfSelf, BalanceOfPair, PairBalanceMinusOne, BurnSupplyFormula, FeeAdjusted],
    Field(discriminator="kind"),
]

FeeAdjusted.model_rebuild()


def constant(value: int) -> ConstantArg:
    return ConstantArg(value=value)


# Calls. Account fields take "self", "pair" or a literal account id.


class TransferCall(_Frozen):
    op: Literal["transfer"] = "transfer"
    token: str
    to: str = PAIR
    amount: SymbolicArg

    def describe(self) -> str:
        return f"{self.token}.transfer({self.to}, {self.amount.describe()})"


class BurnCall(_Frozen):
    op: Literal["burn"] = "burn"
    token: str
    from_: str = Field(PAIR, alias="from")
    amount: SymbolicArg

    def describe(self) -> str:
        return f"{self.token}.burn({self.from_}, {self.amount.describe()})"


class SkimCall(_Frozen):
    op: Literal["skim"] = "skim"
    pool: str
    to: str = SELF

    def describe(self) -> str:
        return f"{self.pool}.skim({self.to})"


class SyncCall(_Frozen):
    op: Literal["sync"] = "sync"
    pool: str

    def describe(self) -> str:
        return f"{self.pool}.sync()"


class SwapCall(_Frozen):
    op: Literal["swap"] = "swap"
    pool: str
    input_token: str
    amount: SymbolicArg
    to: str = SELF

    def describe(self) -> str:
        return f"{self.pool}.swap({self.input_token}, {self.amount.describe()}, {self.to})"


class HookCall(_Frozen):
    op: Literal["hook"] = "hook"
    token: str
    name: str

    def describe(self) -> str:
        return f"{self.token}.{self.name}()"


Call = Annotated[
    Union[TransferCall, BurnCall, SkimCall, SyncCall, SwapCall, HookCall],
    Field(discriminator="op"),
]


class ExecutionContext(_Frozen):
    """Who is calling and which pool ``pair`` refers to."""

    attacker: str
    pool: str


class TraceEntry(BaseModel):
    """One executed call with the argument values it actually used."""

    op: str
    call: Call
    args_resolved: List[Amount] = Field(default_factory=list)
    outcome: Dict[str, str] = Field(default_factory=dict)


class Snapshot:
    """Immutable value copy of a WorldState."""

    __slots__ = ("_state",)

    def __init__(self, state: WorldState):
        self._state = state

    @classmethod
    def of(cls, state: WorldState) -> "Snapshot":
        return cls(state.clone())

    def world(self) -> WorldState:
        """Return a fresh mutable copy of the captured state."""
        return self._state.clone()

    def balance_of(self, token: str, account: str) -> int:
        return balance_of(self._state, token, account)

    def peek(self) -> WorldState:
        """Read-only view of the captured state; callers must not mutate it."""
        return self._state

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Snapshot):
            return NotImplemented
        return self._state == other._state

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class TxResult:
    """Outcome of an atomic call sequence.

    ``window`` holds the snapshots after the first call and after the
    second-to-last call. A reverted result has ``final`` equal to the
    initial state.
    """

    reverted: bool
    final: Snapshot
    trace: List[TraceEntry] = field(default_factory=list)
    window: Optional[Tuple[Snapshot, Snapshot]] = None
    revert_reason: Optional[str] = None
    failed_index: Optional[int] = None
