"""Persisted atlas of computed invariants, keyed by canonical code.

Single append-only file of length-prefixed JSON records with per-record
CRC32 checksums.  Appends happen under an exclusive file lock, so one writer
at a time; readers never need the lock.  Records failing their checksum are
quarantined (reported, skipped) rather than silently dropped.
"""

from __future__ import annotations

import fcntl
import json
import os
import struct
import time
import zlib
from dataclasses import asdict, dataclass, field


@dataclass(frozen=True)
class AtlasRecord:
    code: str                      # canonical code, hex
    n: int
    omega: object                  # int or [lower, upper]
    omega_mode: str
    chi: int
    chi_mode: str
    omega_a: int
    omega_d: int
    created: float = field(default_factory=time.time)

    def validate(self) -> None:
        w = self.omega if isinstance(self.omega, int) else self.omega[0]
        if isinstance(self.omega, int) and self.omega > self.chi:
            raise ValueError("clique number cannot exceed dichromatic number")
        if self.n >= 1 and (self.omega_a < 1 or self.omega_d < 1):
            raise ValueError("family indices are at least 1 for non-empty tournaments")
        del w


class Atlas:
    """Append-only invariant store; one writer (file lock), many readers."""

    def __init__(self, path: str):
        self.path = path
        self.quarantined: list[tuple[int, str]] = []

    # -- reading ----------------------------------------------------------
    def records(self) -> dict[str, AtlasRecord]:
        out: dict[str, AtlasRecord] = {}
        self.quarantined = []
        if not os.path.exists(self.path):
            return out
        with open(self.path, "rb") as fh:
            data = fh.read()
        pos = 0
        while pos + 8 <= len(data):
            (length,) = struct.unpack(">I", data[pos:pos + 4])
            end = pos + 4 + length + 4
            if end > len(data):
                self.quarantined.append((pos, "truncated record"))
                break
            payload = data[pos + 4:pos + 4 + length]
            (crc,) = struct.unpack(">I", data[end - 4:end])
            if zlib.crc32(payload) != crc:
                self.quarantined.append((pos, "checksum mismatch"))
                pos = end
                continue
            try:
                rec = AtlasRecord(**json.loads(payload.decode()))
                out[rec.code] = rec
            except (ValueError, TypeError, KeyError) as exc:
                self.quarantined.append((pos, f"bad payload: {exc}"))
            pos = end
        return out

    def get(self, code: str) -> AtlasRecord | None:
        return self.records().get(code)

    # -- writing ----------------------------------------------------------
    def upsert(self, rec: AtlasRecord) -> None:
        rec.validate()
        payload = json.dumps(asdict(rec), sort_keys=True).encode()
        blob = struct.pack(">I", len(payload)) + payload + struct.pack(
            ">I", zlib.crc32(payload))
        with open(self.path, "ab") as fh:
            fcntl.flock(fh.fileno(), fcntl.LOCK_EX)
            try:
                fh.write(blob)
                fh.flush()
                os.fsync(fh.fileno())
            finally:
                fcntl.flock(fh.fileno(), fcntl.LOCK_UN)

    def compact(self) -> int:
        """Rewrite keeping the newest record per code; returns records kept."""
        recs = self.records()
        tmp = self.path + ".compact"
        with open(tmp, "wb") as fh:
            fcntl.flock(fh.fileno(), fcntl.LOCK_EX)
            for rec in sorted(recs.values(), key=lambda r: r.code):
                payload = json.dumps(asdict(rec), sort_keys=True).encode()
                fh.write(struct.pack(">I", len(payload)) + payload
                         + struct.pack(">I", zlib.crc32(payload)))
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, self.path)
        return len(recs)
