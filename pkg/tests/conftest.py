"""Shared fixtures."""

from typing import Any, Dict, List, Optional

import pytest
from hypothesis import HealthCheck, settings

from cpmm_hunter import config
from cpmm_hunter.core.corpus import build_targets
from cpmm_hunter.core.models import Corpus
from cpmm_hunter.synth.models import ScanTarget, SearchConfig

E18 = 10**18


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch):
    """Fresh settings per test, without a log file."""
    monkeypatch.setenv("CPMM_HUNTER_LOG_TO_FILE", "false")
    config._settings = None
    yield
    config._settings = None


def corpus_document(
    behavior: Optional[Any] = None,
    hooks: Optional[List[Dict[str, Any]]] = None,
    reserve_x: int = 20_000 * E18,
    reserve_y: int = 5_000_000 * E18,
    fee_num: int = 997,
    fee_den: int = 1000,
    endowment: Optional[int] = None,
    token_supply: Optional[int] = None,
    holders: Optional[Dict[str, int]] = None,
) -> Dict[str, Any]:
    """One USDT/TKN pool with the attacker holding USDT."""
    if endowment is None:
        endowment = 2 * reserve_x + 1_000 * E18
    token: Dict[str, Any] = {
        "id": "TKN",
        "total_supply": str(token_supply or 2 * reserve_y),
        "behavior": behavior or {"kind": "standard"},
        "hooks": hooks or [],
        "holders": {k: str(v) for k, v in (holders or {}).items()},
    }
    return {
        "attacker": {"id": "attacker", "endowments": {"USDT": str(endowment)}},
        "tokens": [
            {"id": "USDT", "total_supply": str(reserve_x + endowment + 1_000_000 * E18)},
            token,
        ],
        "pools": [
            {
                "id": "USDT-TKN",
                "token_x": "USDT",
                "token_y": "TKN",
                "reserve_x": str(reserve_x),
                "reserve_y": str(reserve_y),
                "fee_num": fee_num,
                "fee_den": fee_den,
            }
        ],
        "prices": {"USDT": {"num": "1", "den": "1"}},
    }


def build_target(**kwargs: Any) -> ScanTarget:
    """Single-pool scan target built through the corpus loader."""
    return build_targets(Corpus.model_validate(corpus_document(**kwargs)))[0]


@pytest.fixture
def make_target():
    """Build a single-pool scan target from token behavior parameters."""
    return build_target


@pytest.fixture
def anch_behavior() -> Dict[str, Any]:
    return {"kind": "reward_on_dex_trade", "reward_num": 5, "reward_den": 10_000, "min_amount": str(10_000 * E18)}


@pytest.fixture
def shadowfi_behavior() -> Dict[str, Any]:
    return {"kind": "public_burn", "anyone_can_burn_from": True}


@pytest.fixture
def fast_config() -> SearchConfig:
    """Small repetition cap for quick end-to-end scans."""
    return SearchConfig(rep_cap=8, limited_rep_cap=8)


settings.register_profile(
    "cpmm",
    max_examples=1000,
    deadline=None,
    suppress_health_check=[HealthCheck.function_scoped_fixture, HealthCheck.too_slow],
)
settings.load_profile("cpmm")
