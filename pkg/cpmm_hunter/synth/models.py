"""Search configuration, templates, test cases and scan results."""

from dataclasses import dataclass, field
from decimal import Decimal
from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from cpmm_hunter.amounts import Amount
from cpmm_hunter.execution.models import (
    SELF,
    Call,
    ConstantArg,
    ExecutionContext,
    SwapCall,
    TraceEntry,
)
from cpmm_hunter.oracle.models import PriceTable, Verdict
from cpmm_hunter.world import WorldState

Phase = Literal["shallow", "deep", "random"]
Status = Literal["profitable", "not_vulnerable", "timeout", "error"]


class SearchConfig(BaseModel):
    """Knobs of the shallow-then-deep search."""

    model_config = ConfigDict(frozen=True)

    rep_cap: int = Field(256, ge=1)
    limited_rep_cap: int = Field(8, ge=1)
    stagnation_limit: int = Field(3, ge=1)
    budget_fractions: List[Decimal] = Field(
        default_factory=lambda: [Decimal("0.01"), Decimal("0.1"), Decimal("1"), Decimal("2")]
    )
    profit_threshold_usd: Decimal = Field(Decimal("1"), ge=0)
    no_repeat: bool = False
    no_invariant_gate: bool = False
    no_dex_fee: bool = False
    random_rep_trials: int = Field(3, ge=1)
    seed: int = 0

    @field_validator("budget_fractions")
    @classmethod
    def _check_fractions(cls, v: List[Decimal]) -> List[Decimal]:
        if not v:
            raise ValueError("at least one budget fraction is required")
        if any(f <= 0 for f in v):
            raise ValueError("budget fractions must be positive")
        return v

    @model_validator(mode="after")
    def _check_caps(self) -> "SearchConfig":
        if self.limited_rep_cap > self.rep_cap:
            raise ValueError("limited_rep_cap must not exceed rep_cap")
        return self

    def rep_schedule(self) -> List[int]:
        """Doubling repetition levels 1, 2, 4, ... ending at ``rep_cap``."""
        levels = []
        r = 1
        while r < self.rep_cap:
            levels.append(r)
            r *= 2
        levels.append(self.rep_cap)
        return levels


@dataclass
class ScanTarget:
    """One pool to scan, with the world it lives in."""

    id: str
    world: WorldState
    pool: str
    token_y: str
    attacker: str
    prices: PriceTable
    label: Optional[Dict[str, object]] = None

    @property
    def token_x(self) -> str:
        return self.world.pool(self.pool).token_x

    @property
    def context(self) -> ExecutionContext:
        return ExecutionContext(attacker=self.attacker, pool=self.pool)


class Segment(BaseModel):
    model_config = ConfigDict(frozen=True)

    calls: List[Call]
    repeatable: bool = False


class Template(BaseModel):
    """Body of a test case between the opening buy and the closing sale."""

    model_config = ConfigDict(frozen=True)

    id: str
    pool: str
    token_x: str
    segments: List[Segment]
    postlude: SwapCall
    expansion: Optional[str] = None

    def body(self, repetitions: int = 1) -> List[Call]:
        calls: List[Call] = []
        for segment in self.segments:
            calls.extend(segment.calls * (repetitions if segment.repeatable else 1))
        return calls

    def prelude(self, budget: int) -> SwapCall:
        return SwapCall(pool=self.pool, input_token=self.token_x, amount=ConstantArg(value=budget), to=SELF)

    def calls(self, budget: int, repetitions: int = 1) -> List[Call]:
        return [self.prelude(budget), *self.body(repetitions), self.postlude]


@dataclass(frozen=True)
class TestCase:
    """A template instantiated with a budget and a repetition count."""

    __test__ = False

    template: Template
    budget: int
    repetitions: int = 1

    def calls(self) -> List[Call]:
        return self.template.calls(self.budget, self.repetitions)

    def with_repetitions(self, repetitions: int) -> "TestCase":
        return TestCase(self.template, self.budget, repetitions)


@dataclass
class Candidate:
    """A shallow test case that broke an invariant without paying off."""

    case: TestCase
    verdict: Verdict
    final_x: int


@dataclass
class ShallowOutcome:
    """Profitable report, invariant-breaking candidates, or neither."""

    report: Optional["ExploitReport"] = None
    candidates: List[Candidate] = field(default_factory=list)

    @property
    def profitable(self) -> bool:
        return self.report is not None


class ExploitReport(BaseModel):
    """A concrete profitable transaction."""

    target: str
    template_id: str
    phase: Phase
    repetitions: int
    budget: Amount
    broken_invariants: List[int] = Field(default_factory=list)
    calls: List[Call]
    trace: List[TraceEntry]
    profit_token: str
    profit_amount: Amount
    profit_usd: str  # exact fraction "num/den"


class ScanVerdict(BaseModel):
    """Result of scanning one target."""

    target: str
    status: Status
    early_terminated: bool = False
    phase: Optional[Phase] = None
    report: Optional[ExploitReport] = None
    candidates: int = 0
    executions: int = 0
    deep_search_ran: bool = False
    error: Optional[str] = None

    @property
    def profitable(self) -> bool:
        return self.status == "profitable"
