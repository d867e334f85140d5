"""Canonical JSON form shared by all persisted documents and read endpoints.

Canonical means: object keys sorted lexicographically, 2-space indentation,
UTF-8 text (no ASCII escaping), arrays in declared order, trailing newline.
Serializing the same structure twice is byte-identical.
"""

from __future__ import annotations

import json
from typing import Any


def canonical_dumps(obj: Any) -> str:
    """Render ``obj`` in canonical JSON form."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def canonical_bytes(obj: Any) -> bytes:
    return canonical_dumps(obj).encode("utf-8")
