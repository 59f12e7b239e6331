"""Report files: writing, reading and replaying them."""

from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Union

from pydantic import ValidationError

from cpmm_hunter import __version__
from cpmm_hunter.core.corpus import load_corpus
from cpmm_hunter.core.manager import ScanResult
from cpmm_hunter.core.models import ReportFile
from cpmm_hunter.errors import CorpusError, ReplayMismatchError
from cpmm_hunter.execution.executor import execute_tx
from cpmm_hunter.logger import get_logger
from cpmm_hunter.synth.models import ExploitReport, ScanTarget, ScanVerdict, SearchConfig
from cpmm_hunter.synth.search import ScanEngine

logger = get_logger()


def build_report(results: List[ScanResult], config: SearchConfig) -> ReportFile:
    """Assemble the report document for a finished scan."""
    return ReportFile(
        engine_version=__version__,
        generated_at=datetime.now(timezone.utc).isoformat(),
        config=config.model_dump(mode="json"),
        results=[result.verdict for result in results],
    )


def emit_report(results: List[ScanResult], path: Union[str, Path], config: SearchConfig) -> ReportFile:
    """Write the scan report as JSON.

    Args:
        results: Scan results (any order; the file is sorted by target id)
        path: Output file
        config: Configuration echoed into the report

    Returns:
        The report that was written
    """
    report = build_report(results, config)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.model_dump_json(indent=2, by_alias=True) + "\n", encoding="utf-8")
    logger.info(f"Wrote report for {len(report.results)} targets to {path}")
    return report


def load_report(path: Union[str, Path]) -> ReportFile:
    """Read and validate a report file."""
    path = Path(path)
    try:
        return ReportFile.model_validate_json(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise CorpusError(f"cannot read report {path}: {e}") from e
    except ValidationError as e:
        raise CorpusError(f"malformed report {path}: {e}") from e


def replay_finding(target: ScanTarget, finding: ExploitReport, config: SearchConfig) -> None:
    """Re-execute one finding and check it reproduces exactly.

    Raises:
        ReplayMismatchError: If the transaction reverts, resolves different
            arguments or yields a different profit
    """
    engine = ScanEngine(target.world, target, config)
    result = execute_tx(engine.world, finding.calls, engine.ctx)
    if result.reverted:
        raise ReplayMismatchError(
            f"{target.id}: replay reverted at call {result.failed_index}: {result.revert_reason}"
        )

    recorded = [entry.args_resolved for entry in finding.trace]
    replayed = [entry.args_resolved for entry in result.trace]
    if recorded != replayed:
        for index, (before, after) in enumerate(zip(recorded, replayed)):
            if before != after:
                raise ReplayMismatchError(
                    f"{target.id}: call {index} resolved {after}, report says {before}"
                )
        raise ReplayMismatchError(f"{target.id}: trace length differs from the report")

    before = engine.initial.balance_of(finding.profit_token, target.attacker)
    gained = result.final.balance_of(finding.profit_token, target.attacker) - before
    if gained != finding.profit_amount:
        raise ReplayMismatchError(
            f"{target.id}: replay gains {gained} {finding.profit_token}, report says {finding.profit_amount}"
        )


def replay(report_path: Union[str, Path], corpus_path: Union[str, Path]) -> List[ScanVerdict]:
    """Replay every profitable finding of a report against a corpus.

    Args:
        report_path: Report written by ``scan``
        corpus_path: Corpus the report was produced from

    Returns:
        The verdicts whose findings were confirmed

    Raises:
        ReplayMismatchError: If a target is missing or a finding does not reproduce
    """
    report = load_report(report_path)
    config = SearchConfig.model_validate(report.config)
    targets: Dict[str, ScanTarget] = {target.id: target for target in load_corpus(corpus_path)}

    confirmed = []
    for verdict in report.results:
        if not verdict.profitable or verdict.report is None:
            continue
        target = targets.get(verdict.target)
        if target is None:
            raise ReplayMismatchError(f"report target {verdict.target} is not in the corpus")
        try:
            replay_finding(target, verdict.report, config)
        except ReplayMismatchError as e:
            logger.error(f"Replay mismatch: {e}")
            raise
        logger.info(
            f"{verdict.target}: replay confirmed {verdict.report.profit_amount} {verdict.report.profit_token}"
        )
        confirmed.append(verdict)
    return confirmed
