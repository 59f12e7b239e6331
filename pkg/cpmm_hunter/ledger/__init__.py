"""Token ledgers and the token behavior interpreter."""

from cpmm_hunter.ledger.models import TokenLedger, TokenSpec, TransferOutcome
from cpmm_hunter.ledger.parser import parse_token_spec
from cpmm_hunter.ledger.ledger import (
    balance_of,
    burn,
    check_conservation,
    circulating_supply,
    invoke_hook,
    transfer,
)

__all__ = [
    "TokenLedger",
    "TokenSpec",
    "TransferOutcome",
    "parse_token_spec",
    "balance_of",
    "burn",
    "check_conservation",
    "circulating_supply",
    "invoke_hook",
    "transfer",
]
