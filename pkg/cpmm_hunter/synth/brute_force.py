"""Exhaustive reference search used to check the pipeline."""

from typing import Optional

from cpmm_hunter.logger import get_logger
from cpmm_hunter.synth.models import ScanTarget, ScanVerdict, SearchConfig, TestCase
from cpmm_hunter.synth.search import ScanEngine
from cpmm_hunter.world import WorldState

logger = get_logger()


def brute_force_oracle(
    world: WorldState,
    target: ScanTarget,
    bound: int,
    config: Optional[SearchConfig] = None,
) -> ScanVerdict:
    """Try every template, expansion and budget at every repetition count up to ``bound``.

    Repetition counts are the outer loop, so the first profitable execution
    found uses the fewest repetitions of any test case.

    Args:
        world: World to scan
        target: Target to scan
        bound: Largest repetition count tried
        config: Budgets, ablations and threshold (defaults apply otherwise)

    Returns:
        Profitable verdict with a report, or not_vulnerable
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    engine = ScanEngine(world, target, config or SearchConfig())
    templates = [*engine.base, *engine.expanded]
    for repetitions in range(1, bound + 1):
        for budget in engine.budgets:
            for template in templates:
                case = TestCase(template, budget, repetitions)
                result, verdict = engine.run(case)
                if verdict.profitable:
                    phase = "shallow" if repetitions == 1 else "deep"
                    logger.debug(f"{target.id}: oracle found profit at r={repetitions}")
                    return ScanVerdict(
                        target=target.id,
                        status="profitable",
                        phase=phase,
                        report=engine.report(case, result, verdict, phase),
                        executions=engine.executions,
                    )
    return ScanVerdict(target=target.id, status="not_vulnerable", executions=engine.executions)
