"""Scan orchestration across many targets."""

import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Dict, List, Optional

from cpmm_hunter.logger import get_logger
from cpmm_hunter.synth.models import ScanTarget, ScanVerdict, SearchConfig
from cpmm_hunter.synth.search import run_pipeline

logger = get_logger()


@dataclass
class ScanResult:
    """Verdict of one target plus the wall-clock time it took."""

    target: ScanTarget
    verdict: ScanVerdict
    elapsed: float


def scan_target(target: ScanTarget, config: SearchConfig, timeout_secs: Optional[float] = 1200.0) -> ScanResult:
    """Scan a single target, turning any failure into an ``error`` verdict.

    Args:
        target: Target to scan
        config: Search configuration
        timeout_secs: Cooperative per-target deadline, None for no limit

    Returns:
        Scan result with timing
    """
    logger.info(f"Scanning {target.id}")
    started = time.monotonic()
    deadline = started + timeout_secs if timeout_secs is not None else None
    try:
        verdict = run_pipeline(target.world, target, config, deadline)
    except Exception as e:
        logger.exception(f"Scan of {target.id} failed: {e}")
        verdict = ScanVerdict(target=target.id, status="error", error=f"{type(e).__name__}: {e}")
    elapsed = time.monotonic() - started
    logger.info(f"{target.id}: {verdict.status} in {elapsed:.2f}s ({verdict.executions} executions)")
    return ScanResult(target=target, verdict=verdict, elapsed=elapsed)


def scan_all(
    targets: List[ScanTarget],
    config: SearchConfig,
    worker_count: int = 4,
    timeout_secs: Optional[float] = 1200.0,
) -> List[ScanResult]:
    """Scan targets in parallel.

    Each target owns its world, so workers share no mutable state. Results
    are ordered by target id whatever order the workers finish in.

    Args:
        targets: Targets to scan
        config: Search configuration
        worker_count: Maximum number of worker threads
        timeout_secs: Per-target deadline

    Returns:
        One result per target, sorted by target id
    """
    if worker_count < 1:
        raise ValueError("worker_count must be at least 1")
    if not targets:
        return []

    results: Dict[str, ScanResult] = {}
    with ThreadPoolExecutor(max_workers=worker_count) as executor:
        future_to_target = {
            executor.submit(scan_target, target, config, timeout_secs): target for target in targets
        }
        for future in as_completed(future_to_target):
            target = future_to_target[future]
            results[target.id] = future.result()

    ordered = [results[key] for key in sorted(results)]
    found = sum(1 for result in ordered if result.verdict.profitable)
    logger.info(f"Scanned {len(ordered)} targets with {worker_count} workers, {found} profitable")
    return ordered
