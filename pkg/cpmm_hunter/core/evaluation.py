"""Detection quality against ground-truth labels."""

from dataclasses import dataclass
from typing import List, Optional

from cpmm_hunter.core.manager import ScanResult


@dataclass
class Evaluation:
    true_positives: int = 0
    false_positives: int = 0
    false_negatives: int = 0
    true_negatives: int = 0
    timeouts: int = 0
    errors: int = 0
    vulnerable_time: float = 0.0
    benign_time: float = 0.0

    @property
    def labeled(self) -> int:
        return self.true_positives + self.false_positives + self.false_negatives + self.true_negatives

    @property
    def precision(self) -> Optional[float]:
        flagged = self.true_positives + self.false_positives
        return self.true_positives / flagged if flagged else None

    @property
    def recall(self) -> Optional[float]:
        vulnerable = self.true_positives + self.false_negatives
        return self.true_positives / vulnerable if vulnerable else None

    @property
    def f1(self) -> Optional[float]:
        p, r = self.precision, self.recall
        if p is None or r is None or p + r == 0:
            return None
        return 2 * p * r / (p + r)


def evaluate(results: List[ScanResult]) -> Optional[Evaluation]:
    """Score scan results against their labels.

    Unlabeled targets are ignored. Anything not profitable (timeouts and
    errors included) counts as a negative.

    Returns:
        Scores, or None when no target carries a label
    """
    summary = Evaluation()
    for result in results:
        label = result.target.label
        if not label:
            continue
        vulnerable = bool(label.get("vulnerable"))
        flagged = result.verdict.profitable
        if vulnerable:
            summary.vulnerable_time += result.elapsed
            if flagged:
                summary.true_positives += 1
            else:
                summary.false_negatives += 1
        else:
            summary.benign_time += result.elapsed
            if flagged:
                summary.false_positives += 1
            else:
                summary.true_negatives += 1
        if result.verdict.status == "timeout":
            summary.timeouts += 1
        elif result.verdict.status == "error":
            summary.errors += 1
    return summary if summary.labeled else None
