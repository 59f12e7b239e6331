"""Parsing of token specification documents."""

from typing import Any, List, Sequence, Tuple, Union

import yaml
from pydantic import ValidationError

from cpmm_hunter.errors import SpecError
from cpmm_hunter.ledger.models import BEHAVIOR_KINDS, HOOK_EFFECT_KINDS, TokenSpec

_TAGS = set(BEHAVIOR_KINDS) | set(HOOK_EFFECT_KINDS)


def _issue_path(loc: Sequence[Union[str, int]], prefix: Sequence[Union[str, int]]) -> str:
    parts = [str(p) for p in (*prefix, *loc) if p not in _TAGS]
    return ".".join(parts)


def _issue_message(error: dict) -> str:
    kind = error["type"]
    loc = error.get("loc", ())
    if kind == "union_tag_invalid":
        return "unknown hook effect kind" if "effect" in loc else "unknown behavior kind"
    if kind == "union_tag_not_found":
        return "missing hook effect kind" if "effect" in loc else "missing behavior kind"
    message = error["msg"]
    if message.startswith("Value error, "):
        message = message[len("Value error, "):]
    return message


def validation_issues(
    exc: ValidationError, prefix: Sequence[Union[str, int]] = ()
) -> List[Tuple[str, str]]:
    """Turn a pydantic ValidationError into ``(dotted_path, message)`` issues.

    Discriminator tags are dropped from paths, so a bad fee rate reads
    ``behavior.0.rate_bps`` rather than naming the union member.

    Args:
        exc: Validation error to convert
        prefix: Path of the validated object inside a larger document

    Returns:
        List of issues
    """
    return [
        (_issue_path(error.get("loc", ()), prefix), _issue_message(error))
        for error in exc.errors()
    ]


def load_document(text: str) -> Any:
    """Load a JSON or YAML document (JSON is a YAML subset)."""
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise SpecError([("", f"malformed document: {e}")]) from e


def parse_token_spec(text: str) -> TokenSpec:
    """Parse and validate a token specification document.

    Args:
        text: JSON or YAML document

    Returns:
        Validated token specification

    Raises:
        SpecError: If the document is malformed or violates a constraint
    """
    data = load_document(text)
    if not isinstance(data, dict):
        raise SpecError([("", "malformed document: expected a mapping at the top level")])
    try:
        return TokenSpec.model_validate(data)
    except ValidationError as e:
        raise SpecError(validation_issues(e)) from e
