"""Replayable certificates, one JSON object per line.

A certificate file starts with a header line ``# fatpoints-certificates v1``
and then holds one record per checked case.  Records are appended and flushed
one at a time, so the prefix of an interrupted sweep is still usable.
"""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field
from typing import IO, Iterable, Iterator

from . import __version__
from .interpolation import GENERATOR_ID

FORMAT_HEADER = "# fatpoints-certificates v1"
FORMAT_VERSION = 1


@dataclass
class Attempt:
    seed: int
    rank: int


@dataclass
class Certificate:
    config: str
    prime: int
    base_seed: int
    attempts: list[Attempt]
    length: int
    N: int
    rank: int
    special: bool
    dim: int
    vdim: int
    seconds: float = 0.0
    generator: str = GENERATOR_ID
    tool_version: str = __version__
    oracle: dict | None = None
    failures: list[int] = field(default_factory=list)
    trace: list[str] | None = None

    @property
    def key(self) -> tuple:
        """Identity of the record, ignoring wall-clock time."""
        d = self.to_dict()
        d.pop("seconds")
        return tuple(sorted((k, json.dumps(v, sort_keys=True)) for k, v in d.items()))

    def to_dict(self) -> dict:
        return asdict(self)

    def to_line(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: dict) -> "Certificate":
        d = dict(d)
        d["attempts"] = [Attempt(**a) for a in d["attempts"]]
        return cls(**d)

    @classmethod
    def from_line(cls, line: str) -> "Certificate":
        return cls.from_dict(json.loads(line))


def write_certificate(cert: Certificate, stream: IO[str]) -> None:
    stream.write(cert.to_line() + "\n")
    stream.flush()


def read_certificates(stream: IO[str]) -> Iterator[Certificate]:
    for raw in stream:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield Certificate.from_line(line)


class CertificateLog:
    """Append-only certificate file that remembers which cases it already holds."""

    def __init__(self, path: str | os.PathLike):
        self.path = os.fspath(path)
        self.records: dict[tuple, Certificate] = {}
        fresh = not os.path.exists(self.path) or os.path.getsize(self.path) == 0
        if not fresh:
            with open(self.path, encoding="utf-8") as fh:
                first = fh.readline().strip()
                if first != FORMAT_HEADER:
                    raise ValueError(f"{self.path}: not a certificate file (header {first!r})")
                for cert in read_certificates(fh):
                    self.records[self._case(cert)] = cert
        self._fh = open(self.path, "a", encoding="utf-8")
        if fresh:
            self._fh.write(FORMAT_HEADER + "\n")
            self._fh.flush()

    @staticmethod
    def _case(cert: Certificate) -> tuple:
        return (cert.config, cert.prime, cert.base_seed)

    def lookup(self, config: str, prime: int, base_seed: int) -> Certificate | None:
        return self.records.get((config, prime, base_seed))

    def append(self, cert: Certificate) -> None:
        write_certificate(cert, self._fh)
        self.records[self._case(cert)] = cert

    def close(self) -> None:
        self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def load_certificates(path: str | os.PathLike) -> list[Certificate]:
    with open(path, encoding="utf-8") as fh:
        return list(read_certificates(fh))


def dump_certificates(certs: Iterable[Certificate], path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(FORMAT_HEADER + "\n")
        for c in certs:
            write_certificate(c, fh)
