"""Tests for parallel scan orchestration."""

from decimal import Decimal

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpmm_hunter.core import manager
from cpmm_hunter.core.corpus import build_targets
from cpmm_hunter.core.corpusgen import generate_corpus
from cpmm_hunter.core.manager import scan_all, scan_target
from cpmm_hunter.synth.models import SearchConfig

SMALL_CONFIG = SearchConfig(budget_fractions=[Decimal("0.01")], rep_cap=2, limited_rep_cap=2)


def _targets(seed=0, **counts):
    return build_targets(generate_corpus(seed, counts))


def test_scan_all_clean_targets():
    """Test plain tokens all come back not vulnerable after one pass."""
    results = scan_all(_targets(benign=3), SearchConfig(), worker_count=4)

    assert len(results) == 3
    for result in results:
        assert result.verdict.status == "not_vulnerable"
        assert result.verdict.early_terminated
        assert result.elapsed >= 0


def test_scan_all_orders_by_target_id():
    """Test results come back sorted whatever order targets were given in."""
    targets = _targets(shadowfi=2, benign=2)
    results = scan_all(list(reversed(targets)), SMALL_CONFIG, worker_count=3)
    ids = [result.target.id for result in results]
    assert ids == sorted(target.id for target in targets)


def test_scan_all_empty_and_bad_worker_count():
    """Test no targets gives no results and zero workers is refused."""
    assert scan_all([], SearchConfig()) == []
    with pytest.raises(ValueError):
        scan_all(_targets(benign=1), SearchConfig(), worker_count=0)


def test_scan_target_turns_crash_into_error_verdict(monkeypatch):
    """Test an unexpected exception becomes an error verdict for that target only."""

    def explode(*args, **kwargs):
        raise RuntimeError("boom")

    monkeypatch.setattr(manager, "run_pipeline", explode)
    result = scan_target(_targets(benign=1)[0], SearchConfig())

    assert result.verdict.status == "error"
    assert result.verdict.error == "RuntimeError: boom"
    assert not result.verdict.profitable


def test_scan_target_timeout():
    """Test a tiny per-target deadline yields a timeout verdict."""
    result = scan_target(_targets(anch=1)[0], SearchConfig(), timeout_secs=1e-9)
    assert result.verdict.status == "timeout"


@pytest.mark.slow
@settings(max_examples=1000)
@given(seed=st.integers(min_value=0, max_value=2**32 - 1))
def test_worker_count_does_not_change_verdicts(seed):
    """Test one worker and eight workers reach identical verdicts."""
    counts = {"shadowfi": 1, "benign": 1}
    serial = scan_all(_targets(seed, **counts), SMALL_CONFIG, worker_count=1, timeout_secs=None)
    parallel = scan_all(_targets(seed, **counts), SMALL_CONFIG, worker_count=8, timeout_secs=None)

    assert [r.verdict.model_dump() for r in serial] == [r.verdict.model_dump() for r in parallel]
