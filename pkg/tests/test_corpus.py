"""Tests for corpus loading, filtering and generation."""

import json
from decimal import Decimal
from pathlib import Path

import pytest
import yaml

from cpmm_hunter.core.corpus import build_targets, filter_targets, load_corpus, parse_corpus, pool_usd
from cpmm_hunter.core.corpusgen import generate_corpus, write_corpus
from cpmm_hunter.errors import CorpusError
from cpmm_hunter.ledger import balance_of
from tests.conftest import E18, build_target, corpus_document


def test_empty_corpus_has_no_targets(tmp_path):
    """Test an empty document loads as zero targets."""
    path = tmp_path / "corpus.json"
    path.write_text("{}")
    assert load_corpus(path) == []


def test_missing_corpus_file(tmp_path):
    """Test a missing file is a corpus error."""
    with pytest.raises(CorpusError, match="cannot read corpus"):
        load_corpus(tmp_path / "absent.json")


def test_yaml_corpus(tmp_path):
    """Test a YAML corpus loads like the JSON one."""
    path = tmp_path / "corpus.yaml"
    path.write_text(yaml.safe_dump(corpus_document()))
    targets = load_corpus(path)
    assert [t.id for t in targets] == ["USDT-TKN"]


def test_unknown_token_reference():
    """Test a pool naming an unknown token is rejected."""
    document = corpus_document()
    document["pools"][0]["token_y"] = "NOPE"
    with pytest.raises(CorpusError, match="unknown token NOPE"):
        parse_corpus(json.dumps(document))


def test_duplicate_pool_ids():
    """Test pool ids must be unique."""
    document = corpus_document()
    document["pools"].append(dict(document["pools"][0]))
    with pytest.raises(CorpusError, match="duplicate pool ids"):
        parse_corpus(json.dumps(document))


def test_over_allocation():
    """Test holders and reserves cannot exceed the total supply."""
    document = corpus_document(token_supply=1_000 * E18)
    with pytest.raises(CorpusError, match="total_supply"):
        parse_corpus(json.dumps(document))


def test_attacker_starts_without_token_y():
    """Test the attacker may not hold the traded token at genesis."""
    document = corpus_document(holders={"attacker": E18})
    with pytest.raises(CorpusError, match="zero TKN"):
        parse_corpus(json.dumps(document))


def test_genesis_balances():
    """Test reserves, endowment and the deployer remainder."""
    target = build_target(reserve_x=1_000 * E18, reserve_y=2_000 * E18, endowment=500 * E18)
    world = target.world
    pool = world.pool("USDT-TKN")

    assert (pool.reserve_x, pool.reserve_y) == (1_000 * E18, 2_000 * E18)
    assert balance_of(world, "USDT", "attacker") == 500 * E18
    assert balance_of(world, "TKN", "attacker") == 0
    assert balance_of(world, "TKN", "deployer") == 2_000 * E18


def test_filter_usd_boundary():
    """Test only pools worth more than the minimum are kept."""
    small = build_target(reserve_x=999 * E18)
    exact = build_target(reserve_x=1_000 * E18)
    large = build_target(reserve_x=1_001 * E18)

    assert pool_usd(large) == 1_001
    assert filter_targets([small, exact, large]) == [large]
    assert filter_targets([small], min_usd=Decimal("500")) == [small]


def test_filter_drops_unpriced_pools():
    """Test a pool whose token_x has no price is skipped."""
    document = corpus_document()
    document["prices"] = {}
    target = build_targets(parse_corpus(json.dumps(document)))[0]
    assert pool_usd(target) is None
    assert filter_targets([target], min_usd=0) == []


def test_generate_corpus_is_deterministic(tmp_path):
    """Test one seed always yields the same corpus."""
    counts = {"anch": 1, "shadowfi": 1, "deflate": 1, "rebase": 1, "benign": 10, "benign_fot": 10}
    first = generate_corpus(42, counts)
    second = generate_corpus(42, counts)

    assert first == second
    assert len(first.pools) == 24
    assert generate_corpus(43, counts) != first

    path = write_corpus(first, tmp_path / "out" / "corpus.json")
    assert len(load_corpus(path)) == 24


def test_generated_labels():
    """Test every pool carries its archetype's ground truth."""
    corpus = generate_corpus(0, {"shadowfi": 2, "benign_fot": 1})
    labels = {pool.id: pool.label for pool in corpus.pools}

    assert set(labels) == {"USDT-SHADOWFI001", "USDT-SHADOWFI002", "USDT-BENIGN_FOT001"}
    assert labels["USDT-SHADOWFI001"].vulnerable
    assert labels["USDT-SHADOWFI001"].invariant == 1
    assert not labels["USDT-BENIGN_FOT001"].vulnerable


def test_generated_targets_pass_the_filter():
    """Test generated pools are all large enough to scan."""
    counts = {"anch": 2, "rebase": 2, "benign": 2}
    targets = build_targets(generate_corpus(3, counts))
    assert len(filter_targets(targets)) == 6


def test_generate_corpus_rejects_bad_counts():
    """Test unknown archetypes and negative counts."""
    with pytest.raises(CorpusError, match="unknown archetype"):
        generate_corpus(0, {"honeypot": 1})
    with pytest.raises(CorpusError, match="negative"):
        generate_corpus(0, {"benign": -1})


def test_bundled_reward_token_corpus():
    """Test the shipped example corpus loads the trade-reward constants."""
    targets = load_corpus(Path(__file__).parent.parent / "corpora" / "anch.json")

    assert len(targets) == 1
    spec = targets[0].world.token("ANCH").spec
    reward = spec.behavior[0]
    assert (reward.reward_num, reward.reward_den) == (5, 10_000)
    assert reward.min_amount == 10_000 * E18
    assert targets[0].label == {"vulnerable": True, "archetype": "anch", "invariant": 2}
