"""On-disk coefficient-table cache.

Files are JSON keyed by (operation, parameters, code version); any
mismatch on load is treated as a miss and forces a recompute, so stale
caches can never change results.  Writes go through a temp file in the
same directory followed by an atomic rename.
"""

import hashlib
import json
import os
import tempfile

from . import __version__

SCHEMA_VERSION = "1"


def _key(operation, parameters):
    blob = json.dumps(
        {"op": operation, "params": parameters}, sort_keys=True
    )
    return hashlib.sha256(blob.encode()).hexdigest()[:24]


def cache_path(cache_dir, operation, parameters):
    return cache_dir / f"{operation}-{_key(operation, parameters)}.json"


def load(cache_dir, operation, parameters):
    """Return the cached payload or None on any mismatch."""
    path = cache_path(cache_dir, operation, parameters)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None
    if (
        data.get("schema") != SCHEMA_VERSION
        or data.get("code_version") != __version__
        or data.get("operation") != operation
        or data.get("parameters") != parameters
    ):
        return None
    return data.get("payload")


def store(cache_dir, operation, parameters, payload):
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = cache_path(cache_dir, operation, parameters)
    body = json.dumps(
        {
            "schema": SCHEMA_VERSION,
            "code_version": __version__,
            "operation": operation,
            "parameters": parameters,
            "payload": payload,
        },
        sort_keys=True,
        separators=(",", ":"),
    )
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(body)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
    return path


def cached(config, operation, parameters, compute, encode, decode):
    """Generic read-through helper honoring config.no_cache."""
    if config.no_cache:
        return compute()
    payload = load(config.cache_dir, operation, parameters)
    if payload is not None:
        return decode(payload)
    value = compute()
    store(config.cache_dir, operation, parameters, encode(value))
    return value
