"""Corpus handling, scan orchestration and reporting."""

from cpmm_hunter.core.corpus import build_targets, filter_targets, load_corpus, read_corpus
from cpmm_hunter.core.corpusgen import generate_corpus, write_corpus
from cpmm_hunter.core.evaluation import Evaluation, evaluate
from cpmm_hunter.core.manager import ScanResult, scan_all, scan_target
from cpmm_hunter.core.models import Corpus, ReportFile
from cpmm_hunter.core.reports import emit_report, load_report, replay

__all__ = [
    "build_targets",
    "filter_targets",
    "load_corpus",
    "read_corpus",
    "generate_corpus",
    "write_corpus",
    "Evaluation",
    "evaluate",
    "ScanResult",
    "scan_all",
    "scan_target",
    "Corpus",
    "ReportFile",
    "emit_report",
    "load_report",
    "replay",
]
