"""Shallow-then-deep exploit search."""

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from cpmm_hunter.errors import ScanTimeout
from cpmm_hunter.execution.executor import execute_tx
from cpmm_hunter.execution.models import Snapshot, TxResult
from cpmm_hunter.logger import get_logger
from cpmm_hunter.oracle.models import Verdict
from cpmm_hunter.oracle.oracle import assess
from cpmm_hunter.synth.models import (
    Candidate,
    ExploitReport,
    Phase,
    ScanTarget,
    ScanVerdict,
    SearchConfig,
    ShallowOutcome,
    Template,
    TestCase,
)
from cpmm_hunter.synth.templates import (
    compute_budgets,
    enumerate_templates,
    expand_with_state_changing,
)
from cpmm_hunter.world import WorldState

logger = get_logger()


@dataclass
class _Track:
    """Deep-search progress of one candidate."""

    candidate: Candidate
    last_x: int
    cap: int
    stagnant: int = 0
    alive: bool = True


class ScanEngine:
    """Runs the search for one target on a private copy of its world."""

    def __init__(
        self,
        world: WorldState,
        target: ScanTarget,
        config: SearchConfig,
        deadline: Optional[float] = None,
    ):
        """Initialize the engine.

        Args:
            world: World to scan; copied, never modified
            target: Pool, token and attacker under test
            config: Search configuration
            deadline: ``time.monotonic()`` value after which the scan stops
        """
        self.target = target
        self.config = config
        self.deadline = deadline
        self.world = world.clone()
        if config.no_dex_fee:
            pool = self.world.pool(target.pool)
            pool.fee_num = pool.fee_den = 1
        self.initial = Snapshot(self.world)
        self.ctx = target.context
        self.token_x = self.world.pool(target.pool).token_x
        self.spec = self.world.token(target.token_y).spec
        self.threshold = Fraction(config.profit_threshold_usd)
        self.executions = 0

        self.base: List[Template] = enumerate_templates(self.world, target.pool, self.spec)
        self._expanded: Optional[List[Template]] = None
        self.budgets = compute_budgets(
            self.world, target.pool, target.attacker, config.budget_fractions
        )

    @property
    def expanded(self) -> List[Template]:
        if self._expanded is None:
            self._expanded = [
                variant
                for template in self.base
                for variant in expand_with_state_changing(template, self.spec)
            ]
        return self._expanded

    def run(self, case: TestCase) -> Tuple[TxResult, Verdict]:
        """Execute one test case and judge it."""
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ScanTimeout(f"target {self.target.id} timed out after {self.executions} executions")
        self.executions += 1
        result = execute_tx(self.world, case.calls(), self.ctx)
        verdict = assess(
            self.initial,
            result,
            self.target.attacker,
            self.target.pool,
            self.target.token_y,
            self.target.prices,
            self.threshold,
        )
        return result, verdict

    def final_x(self, result: TxResult) -> int:
        return result.final.balance_of(self.token_x, self.target.attacker)

    def report(self, case: TestCase, result: TxResult, verdict: Verdict, phase: Phase) -> ExploitReport:
        usd = verdict.profit_usd
        return ExploitReport(
            target=self.target.id,
            template_id=case.template.id,
            phase=phase,
            repetitions=case.repetitions,
            budget=case.budget,
            broken_invariants=list(verdict.broken_invariants),
            calls=case.calls(),
            trace=result.trace,
            profit_token=verdict.profit_token or "",
            profit_amount=verdict.profit_amount,
            profit_usd=f"{usd.numerator}/{usd.denominator}",
        )

    def shallow_search(self) -> ShallowOutcome:
        """Run every template once per budget, base templates before expansions.

        Returns at the first profitable execution. Otherwise collects the
        executions that broke an invariant as candidates for deep search.
        """
        candidates: List[Candidate] = []
        for stage in ("base", "expanded"):
            templates = self.base if stage == "base" else self.expanded
            for budget in self.budgets:
                for template in templates:
                    case = TestCase(template, budget)
                    result, verdict = self.run(case)
                    if verdict.profitable:
                        return ShallowOutcome(
                            report=self.report(case, result, verdict, "shallow"),
                            candidates=candidates,
                        )
                    if verdict.breaks_invariant:
                        candidates.append(Candidate(case, verdict, self.final_x(result)))
            logger.debug(
                f"{self.target.id}: shallow {stage} pass done, {len(candidates)} candidates"
            )
        return ShallowOutcome(candidates=candidates)

    def deep_search(self, candidates: List[Candidate]) -> Optional[ExploitReport]:
        """Repeat the repeatable segments of the candidates until one pays off.

        All candidates climb the repetition schedule together. A candidate is
        dropped when it reverts or its final token_x balance stays flat for
        ``stagnation_limit`` levels, and capped at ``limited_rep_cap`` while
        that balance declines. When a level first yields profit, the levels
        skipped since the previous one are tried in ascending order so the
        report uses the fewest repetitions the candidates can reach.
        """
        tracks = [_Track(c, c.final_x, self.config.rep_cap) for c in candidates]
        previous = 1
        for level in self.config.rep_schedule():
            if level <= 1:
                continue
            live = [t for t in tracks if t.alive and level <= t.cap]
            if not live:
                break
            for track in live:
                case = track.candidate.case.with_repetitions(level)
                result, verdict = self.run(case)
                if result.reverted:
                    track.alive = False
                    continue
                if verdict.profitable:
                    logger.debug(f"{self.target.id}: profit at r={level}, refining from r={previous + 1}")
                    return self._refine(live, previous, level) or self.report(
                        case, result, verdict, "deep"
                    )
                final_x = self.final_x(result)
                if final_x == track.last_x:
                    track.stagnant += 1
                    if track.stagnant >= self.config.stagnation_limit:
                        track.alive = False
                elif final_x < track.last_x:
                    track.stagnant = 0
                    track.cap = self.config.limited_rep_cap
                else:
                    track.stagnant = 0
                    track.cap = self.config.rep_cap
                track.last_x = final_x
            logger.debug(
                f"{self.target.id}: deep level r={level}, "
                f"{sum(1 for t in tracks if t.alive)} candidates alive"
            )
            previous = level
        return None

    def _refine(self, live: List[_Track], low: int, high: int) -> Optional[ExploitReport]:
        for repetitions in range(low + 1, high):
            for track in live:
                case = track.candidate.case.with_repetitions(repetitions)
                result, verdict = self.run(case)
                if verdict.profitable:
                    return self.report(case, result, verdict, "deep")
        return None

    def random_search(self) -> Optional[ExploitReport]:
        """Every test case with random repetition counts, no invariant gate."""
        rng = random.Random(f"{self.config.seed}:{self.target.id}")
        for _ in range(self.config.random_rep_trials):
            for budget in self.budgets:
                for template in [*self.base, *self.expanded]:
                    case = TestCase(template, budget, rng.randint(1, self.config.rep_cap))
                    result, verdict = self.run(case)
                    if verdict.profitable:
                        return self.report(case, result, verdict, "random")
        return None

    def _verdict(self, **fields) -> ScanVerdict:
        return ScanVerdict(target=self.target.id, executions=self.executions, **fields)

    def run_pipeline(self) -> ScanVerdict:
        """Shallow search, then deep (or random) search when it is warranted."""
        try:
            shallow = self.shallow_search()
            if shallow.profitable:
                return self._verdict(
                    status="profitable",
                    phase="shallow",
                    report=shallow.report,
                    candidates=len(shallow.candidates),
                )

            candidates = len(shallow.candidates)
            if self.config.no_invariant_gate:
                report = self.random_search()
            elif not shallow.candidates:
                return self._verdict(status="not_vulnerable", early_terminated=True)
            elif self.config.no_repeat:
                return self._verdict(status="not_vulnerable", candidates=candidates)
            else:
                report = self.deep_search(shallow.candidates)

            if report is None:
                return self._verdict(
                    status="not_vulnerable", candidates=candidates, deep_search_ran=True
                )
            return self._verdict(
                status="profitable",
                phase=report.phase,
                report=report,
                candidates=candidates,
                deep_search_ran=True,
            )
        except ScanTimeout as e:
            logger.warning(str(e))
            return self._verdict(status="timeout")


def shallow_search(world: WorldState, target: ScanTarget, config: SearchConfig) -> ShallowOutcome:
    return ScanEngine(world, target, config).shallow_search()


def deep_search(
    world: WorldState, target: ScanTarget, candidates: List[Candidate], config: SearchConfig
) -> Optional[ExploitReport]:
    return ScanEngine(world, target, config).deep_search(candidates)


def run_pipeline(
    world: WorldState,
    target: ScanTarget,
    config: SearchConfig,
    deadline: Optional[float] = None,
) -> ScanVerdict:
    """Scan one target.

    Args:
        world: World to scan (usually ``target.world``)
        target: Target to scan
        config: Search configuration
        deadline: Optional ``time.monotonic()`` deadline

    Returns:
        Scan verdict
    """
    return ScanEngine(world, target, config, deadline).run_pipeline()
