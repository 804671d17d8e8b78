"""Content-addressed disk cache for expensive exact intermediates.

Only exact payloads are stored (series coefficients, instanton tables as
integer ratios); floats are always recomputed so cached results are
bit-identical to fresh ones.  Writes are atomic (temp file + rename).
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from fractions import Fraction

CACHE_VERSION = "1"
ENV_VAR = "QC_CACHE_DIR"


def cache_dir(explicit: str | None = None) -> str | None:
    return explicit or os.environ.get(ENV_VAR) or None


def cache_key(*parts: str) -> str:
    blob = "\x1f".join([CACHE_VERSION, *parts])
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:32]


def _path(directory: str, key: str) -> str:
    return os.path.join(directory, f"{key}.json")


def load_rationals(directory: str | None, key: str) -> list[Fraction] | None:
    if not directory:
        return None
    path = _path(directory, key)
    if not os.path.exists(path):
        return None
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if data.get("version") != CACHE_VERSION:
        return None
    return [Fraction(int(n), int(d)) for n, d in data["payload"]]


def store_rationals(directory: str | None, key: str, values: list[Fraction]) -> None:
    if not directory:
        return
    os.makedirs(directory, exist_ok=True)
    payload = [[v.numerator, v.denominator] for v in values]
    blob = json.dumps({"version": CACHE_VERSION, "payload": payload})
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(blob)
        os.replace(tmp, _path(directory, key))
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)


def purge(directory: str | None) -> int:
    if not directory or not os.path.isdir(directory):
        return 0
    n = 0
    for name in os.listdir(directory):
        if name.endswith(".json"):
            os.unlink(os.path.join(directory, name))
            n += 1
    return n
