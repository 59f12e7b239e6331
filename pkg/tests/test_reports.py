"""Tests for report files and replay."""

import json

import pytest

from cpmm_hunter import __version__
from cpmm_hunter.core.corpus import build_targets
from cpmm_hunter.core.corpusgen import generate_corpus, write_corpus
from cpmm_hunter.core.manager import scan_all
from cpmm_hunter.core.reports import emit_report, load_report, replay
from cpmm_hunter.errors import CorpusError, ReplayMismatchError
from cpmm_hunter.synth.models import SearchConfig

COUNTS = {"shadowfi": 2, "deflate": 1, "benign": 2}


@pytest.fixture
def scanned(tmp_path):
    """A generated corpus, its scan results and the written report."""
    corpus = generate_corpus(9, COUNTS)
    corpus_path = write_corpus(corpus, tmp_path / "corpus.json")
    config = SearchConfig()
    results = scan_all(build_targets(corpus), config, worker_count=2)
    report_path = tmp_path / "report.json"
    emit_report(results, report_path, config)
    return corpus, corpus_path, results, report_path


def test_report_contents(scanned):
    """Test the report echoes version and config and lists every target in order."""
    _, _, results, report_path = scanned
    report = load_report(report_path)

    assert report.engine_version == __version__
    assert report.config["rep_cap"] == 256
    assert [v.target for v in report.results] == sorted(r.target.id for r in results)
    profitable = [v for v in report.results if v.profitable]
    assert len(profitable) == 3
    assert all(v.report.calls and v.report.trace for v in profitable)


def test_amounts_are_decimal_strings(scanned):
    """Test token amounts are written as strings so they survive any JSON reader."""
    _, _, _, report_path = scanned
    document = json.loads(report_path.read_text())
    finding = next(r["report"] for r in document["results"] if r["report"])
    assert isinstance(finding["budget"], str)
    assert isinstance(finding["profit_amount"], str)


def test_replay_confirms_findings(scanned):
    """Test every profitable finding reproduces against its corpus."""
    _, corpus_path, _, report_path = scanned
    confirmed = replay(report_path, corpus_path)
    assert sorted(v.target for v in confirmed) == ["USDT-DEFLATE001", "USDT-SHADOWFI001", "USDT-SHADOWFI002"]


def test_replay_detects_changed_reserves(scanned, tmp_path):
    """Test replaying against a different pool state is a mismatch."""
    corpus, _, _, report_path = scanned
    for pool in corpus.pools:
        pool.reserve_x = pool.reserve_x // 2
    altered = write_corpus(corpus, tmp_path / "altered.json")

    with pytest.raises(ReplayMismatchError):
        replay(report_path, altered)


def test_replay_missing_target(scanned, tmp_path):
    """Test a report target absent from the corpus is a mismatch."""
    _, _, _, report_path = scanned
    other = write_corpus(generate_corpus(9, {"benign": 1}), tmp_path / "other.json")
    with pytest.raises(ReplayMismatchError, match="not in the corpus"):
        replay(report_path, other)


def test_report_is_deterministic(scanned, tmp_path):
    """Test two scans of one corpus write the same report apart from the timestamp."""
    corpus, _, _, report_path = scanned
    config = SearchConfig()
    second_path = tmp_path / "second.json"
    emit_report(scan_all(build_targets(corpus), config, worker_count=4), second_path, config)

    first = json.loads(report_path.read_text())
    second = json.loads(second_path.read_text())
    first.pop("generated_at")
    second.pop("generated_at")
    assert first == second


def test_load_report_errors(tmp_path):
    """Test unreadable and malformed reports are corpus errors."""
    with pytest.raises(CorpusError, match="cannot read report"):
        load_report(tmp_path / "absent.json")
    bad = tmp_path / "bad.json"
    bad.write_text('{"results": 3}')
    with pytest.raises(CorpusError, match="malformed report"):
        load_report(bad)
