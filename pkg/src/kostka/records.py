"""Result records and the append-only JSONL results store."""

from __future__ import annotations

import json
import logging
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterator, Optional

from ._version import __version__
from .ehrhart import EhrhartResult, hstar_from_ehrhart, polynomial_flags
from .polynomial import RationalPolynomial

log = logging.getLogger(__name__)

STORE_ENV = "KOSTKA_STORE"
DEFAULT_STORE = "kostka_results.jsonl"


def descriptor_key(descriptor: dict) -> str:
    """Canonical string identifying an input, used for store lookups."""
    return json.dumps(descriptor, sort_keys=True, separators=(",", ":"))


@dataclass
class ResultRecord:
    descriptor: dict
    dimension: int
    ehrhart: list  # "p/q" strings, constant term first
    hstar: list
    flags: dict
    transcript: list  # [x, value] pairs in evaluation order
    engine_version: str = __version__
    duration: float = 0.0
    verified: Optional[bool] = None
    extra: dict = field(default_factory=dict)

    @classmethod
    def from_result(cls, result: EhrhartResult, duration: float = 0.0, **extra) -> "ResultRecord":
        h = hstar_from_ehrhart(result.polynomial, result.dimension)
        return cls(
            descriptor=dict(result.descriptor),
            dimension=result.dimension,
            ehrhart=result.polynomial.to_strings(),
            hstar=list(h),
            flags=polynomial_flags(result.polynomial, h),
            transcript=[[int(p.x), int(p.value)] for p in result.points],
            duration=round(duration, 6),
            verified=result.verified,
            extra=dict(extra),
        )

    @property
    def key(self) -> str:
        return descriptor_key(self.descriptor)

    @property
    def polynomial(self) -> RationalPolynomial:
        return RationalPolynomial.from_strings(self.ehrhart)

    def check_transcript(self) -> bool:
        """Re-evaluate the stored polynomial at every stored point."""
        poly = self.polynomial
        return all(poly(x) == v for x, v in self.transcript)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "ResultRecord":
        return cls(**data)

    @classmethod
    def from_json(cls, line: str) -> "ResultRecord":
        return cls.from_dict(json.loads(line))


def default_store_path() -> Path:
    return Path(os.environ.get(STORE_ENV, DEFAULT_STORE))


class ResultStore:
    """Line-delimited JSON file of :class:`ResultRecord`, one per line.

    Records are only ever appended.  The index (descriptor key to latest
    record) is rebuilt by scanning the file when the store is opened; a
    truncated last line from an interrupted write is skipped.
    """

    def __init__(self, path=None):
        self.path = Path(path) if path is not None else default_store_path()
        self.index = {}
        if self.path.exists():
            with open(self.path, encoding="utf-8") as fh:
                for lineno, line in enumerate(fh, 1):
                    line = line.strip()
                    if not line:
                        continue
                    try:
                        rec = ResultRecord.from_json(line)
                    except (ValueError, TypeError) as exc:
                        log.warning("%s:%d: skipping unreadable record (%s)", self.path, lineno, exc)
                        continue
                    self.index[rec.key] = rec

    def __contains__(self, descriptor) -> bool:
        key = descriptor if isinstance(descriptor, str) else descriptor_key(descriptor)
        return key in self.index

    def __len__(self):
        return len(self.index)

    def get(self, descriptor) -> Optional[ResultRecord]:
        key = descriptor if isinstance(descriptor, str) else descriptor_key(descriptor)
        return self.index.get(key)

    def append(self, record: ResultRecord) -> None:
        if self.path.parent and not self.path.parent.exists():
            self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(record.to_json() + "\n")
            fh.flush()
        self.index[record.key] = record

    def __iter__(self) -> Iterator[ResultRecord]:
        return iter(self.index.values())
