"""Line-oriented JSON reports: header, one record per examined graph, trailer.

Files hold no timings so that equal runs give equal bytes; wall time lives
only on the in-memory :class:`LemmaReport`.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import IO, Iterable

TOOL = "kminor"
VERSION = "0.1.0"
FORMAT_VERSION = 1
MAX_FAILURES = 100


class ReportError(ValueError):
    pass


def dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


@dataclass
class LemmaReport:
    lemma: str
    filter: dict
    examined: int = 0
    failures: list[tuple[str, str]] = field(default_factory=list)
    failure_count: int = 0
    budget_exceeded: int = 0
    derived: dict = field(default_factory=dict)
    wall_time: float = 0.0
    cursor: str | None = None
    complete: bool = False

    @property
    def verdict(self) -> str:
        if self.failure_count:
            return "failed"
        if self.budget_exceeded:
            return "budget_exceeded"
        if not self.complete:
            return "incomplete"
        return "verified"

    @property
    def exit_code(self) -> int:
        return {"verified": 0, "failed": 1}.get(self.verdict, 2)

    def add_failure(self, g6: str, diagnostic: str) -> None:
        self.failure_count += 1
        if len(self.failures) < MAX_FAILURES:
            self.failures.append((g6, diagnostic))

    def header(self, version: str) -> dict:
        return {"record": "header", "tool": TOOL, "version": version, "format": FORMAT_VERSION,
                "lemma": self.lemma, "filter": self.filter}

    def trailer(self) -> dict:
        return {
            "record": "trailer",
            "examined": self.examined,
            "failures": self.failure_count,
            "budget_exceeded": self.budget_exceeded,
            "derived": self.derived,
            "cursor": self.cursor,
            "verdict": self.verdict,
        }

    def summary(self) -> dict:
        out = self.trailer()
        out.pop("record")
        out["lemma"] = self.lemma
        out["filter"] = self.filter
        out["failure_samples"] = [list(f) for f in self.failures[:10]]
        out["wall_time"] = round(self.wall_time, 3)
        return out


def read_records(path: str | os.PathLike) -> list[dict]:
    """Parse every complete line; a torn final line (crash mid-write) is dropped."""
    out = []
    with open(path, "r", encoding="ascii") as fh:
        for line in fh:
            if not line.endswith("\n"):
                break
            out.append(json.loads(line))
    return out


class ReportWriter:
    """Single writer for a report file; supports resuming an interrupted run."""

    def __init__(self, path: str | os.PathLike, header: dict, resume: bool) -> None:
        self.path = os.fspath(path)
        self.done: list[dict] = []
        self.finished = False
        if resume and os.path.exists(self.path) and os.path.getsize(self.path) > 0:
            records = read_records(self.path)
            if not records or records[0].get("record") != "header":
                raise ReportError(f"{self.path}: no header record")
            if records[0] != header:
                raise ReportError(f"{self.path}: header does not match this run; refusing to resume")
            body = records[1:]
            if body and body[-1].get("record") == "trailer":
                self.finished = True
                body = body[:-1]
            self.done = body
            self._rewrite([header] + body)
        else:
            self._rewrite([header])
        self.fh: IO[str] = open(self.path, "a", encoding="ascii", newline="\n")

    def _rewrite(self, records: Iterable[dict]) -> None:
        with open(self.path, "w", encoding="ascii", newline="\n") as fh:
            for rec in records:
                fh.write(dumps(rec) + "\n")

    def write(self, record: dict) -> None:
        self.fh.write(dumps(record) + "\n")
        self.fh.flush()

    def close(self) -> None:
        self.fh.close()
