"""Small text helpers shared by the serializers."""

from __future__ import annotations

import re

from atcert.errors import FormatError

_ID = re.compile(r"[^\s#,=:]+")
_DIGITS = re.compile(r"(\d+)")


def natural_key(s: str):
    """Sort key that orders ``v2`` before ``v10``."""
    return [(0, int(t), "") if t.isdigit() else (1, 0, t) for t in _DIGITS.split(s) if t]


def check_id(token: str) -> str:
    if not _ID.fullmatch(token):
        raise FormatError(f"invalid vertex id {token!r}")
    return token
