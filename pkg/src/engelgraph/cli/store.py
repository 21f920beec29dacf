"""Append-only result store: one JSON record per line plus a checksum suffix."""

from __future__ import annotations

import fcntl
import hashlib
import json
import os
from contextlib import contextmanager

SEP = "\t#"


def _checksum(payload: str) -> str:
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


def encode_line(record: dict) -> str:
    payload = json.dumps(record, sort_keys=True, separators=(",", ":"))
    return f"{payload}{SEP}{_checksum(payload)}\n"


def decode_line(line: str):
    """The record of one line, or None when the checksum does not match."""
    line = line.rstrip("\n")
    payload, sep, digest = line.rpartition(SEP)
    if not sep or _checksum(payload) != digest:
        return None
    try:
        return json.loads(payload)
    except json.JSONDecodeError:
        return None


@contextmanager
def _locked(path: str, mode: str):
    with open(path, mode, encoding="utf-8") as fh:
        fcntl.flock(fh, fcntl.LOCK_EX if "a" in mode else fcntl.LOCK_SH)
        try:
            yield fh
        finally:
            fcntl.flock(fh, fcntl.LOCK_UN)


def read_store(path: str):
    """``(records, corrupt_line_numbers)``; corrupt lines are skipped."""
    if not os.path.exists(path):
        return [], []
    records, corrupt = [], []
    with _locked(path, "r") as fh:
        for no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            rec = decode_line(line)
            if rec is None:
                corrupt.append(no)
            else:
                records.append(rec)
    return records, corrupt


def append_records(path: str, records) -> int:
    records = list(records)
    if not records:
        return 0
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    with _locked(path, "a") as fh:
        for rec in records:
            fh.write(encode_line(rec))
        fh.flush()
        os.fsync(fh.fileno())
    return len(records)


def record_key(rec: dict) -> tuple:
    return (rec.get("expr"), rec.get("mode"), rec.get("n"))
