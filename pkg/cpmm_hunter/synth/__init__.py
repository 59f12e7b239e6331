"""Exploit synthesis: templates, shallow and deep search."""

from cpmm_hunter.synth.models import (
    ExploitReport,
    ScanTarget,
    ScanVerdict,
    SearchConfig,
    Template,
    TestCase,
)
from cpmm_hunter.synth.templates import enumerate_templates, expand_with_state_changing
from cpmm_hunter.synth.search import ScanEngine, deep_search, run_pipeline, shallow_search
from cpmm_hunter.synth.brute_force import brute_force_oracle

__all__ = [
    "ExploitReport",
    "ScanTarget",
    "ScanVerdict",
    "SearchConfig",
    "Template",
    "TestCase",
    "enumerate_templates",
    "expand_with_state_changing",
    "ScanEngine",
    "deep_search",
    "run_pipeline",
    "shallow_search",
    "brute_force_oracle",
]
