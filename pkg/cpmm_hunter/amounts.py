"""Unsigned 256-bit amount arithmetic and its wire format.

Amounts are plain Python ints in memory. Every operation that could leave the
uint256 range raises ``Revert`` instead of wrapping, mirroring checked EVM math.
Division always truncates toward zero (amounts are never negative, so this is
floor division).
"""

from fractions import Fraction
from typing import Annotated, Any

from pydantic import BeforeValidator, PlainSerializer

from cpmm_hunter.errors import Revert

MAX_UINT256 = 2**256 - 1


def check_uint256(value: int) -> int:
    """Return ``value`` if it fits in uint256, else revert."""
    if value < 0:
        raise Revert("underflow")
    if value > MAX_UINT256:
        raise Revert("overflow")
    return value


def checked_add(a: int, b: int) -> int:
    return check_uint256(a + b)


def checked_sub(a: int, b: int) -> int:
    if b > a:
        raise Revert("underflow")
    return a - b


def checked_mul(a: int, b: int) -> int:
    return check_uint256(a * b)


def mul_div(a: int, b: int, c: int) -> int:
    """``a * b / c`` with truncation; the intermediate product is range checked."""
    if c == 0:
        raise Revert("division by zero")
    return checked_mul(a, b) // c


def to_usd(amount: int, decimals: int, price: Fraction) -> Fraction:
    """Value ``amount`` base units of a token priced per whole token."""
    return Fraction(amount, 10**decimals) * price


def _parse_amount(value: Any) -> int:
    if isinstance(value, bool):
        raise ValueError("amount must be an integer or a decimal string")
    if isinstance(value, str):
        text = value.strip().replace("_", "")
        if not text.isdigit():
            raise ValueError(f"amount {value!r} is not a non-negative decimal integer")
        value = int(text)
    if not isinstance(value, int):
        raise ValueError("amount must be an integer or a decimal string")
    if value < 0 or value > MAX_UINT256:
        raise ValueError("amount out of uint256 range")
    return value


# Decimal strings on the wire; 256-bit values overflow common JSON number ranges.
Amount = Annotated[
    int,
    BeforeValidator(_parse_amount),
    PlainSerializer(lambda v: str(v), return_type=str, when_used="json"),
]
