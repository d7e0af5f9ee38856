"""Repository eligibility filtering over local event-dump files.

Dumps are JSON-lines with one event per line (fields: repo_full_name,
stars, size_bytes, license, event_kind, created_at). A repository is kept
when any event satisfies all criteria; its metadata is recorded as of the
earliest such event.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Sequence, TextIO

from .corpus import RepoMeta, format_utc, parse_utc

log = logging.getLogger(__name__)

DEFAULT_LICENSES = frozenset(
    {
        "apache-2.0",
        "mit",
        "bsd-3-clause",
        "bsd-2-clause",
        "cc0-1.0",
        "unlicense",
        "cc-by-4.0",
        "bsl-1.0",
    }
)
DEFAULT_EVENT_KINDS = frozenset({"pull-request", "pull-request-review-comment"})
DEFAULT_WINDOW_START = datetime(2017, 11, 1, tzinfo=timezone.utc)
DEFAULT_WINDOW_END = datetime(2019, 9, 30, 23, 59, 59, 999999, tzinfo=timezone.utc)


@dataclass(frozen=True)
class EligibilityConfig:
    min_stars: int = 50
    min_size_bytes: int = 1_000_000  # decimal MB/GB; the unit convention is configurable
    max_size_bytes: int = 1_000_000_000
    allowed_licenses: frozenset[str] = DEFAULT_LICENSES
    window_start: datetime = DEFAULT_WINDOW_START
    window_end: datetime = DEFAULT_WINDOW_END
    required_event_kinds: frozenset[str] = DEFAULT_EVENT_KINDS

    def __post_init__(self):
        if self.min_size_bytes >= self.max_size_bytes:
            raise ValueError("min_size_bytes must be < max_size_bytes")
        if self.window_start >= self.window_end:
            raise ValueError("window_start must be < window_end")


def is_eligible(meta: RepoMeta, cfg: EligibilityConfig) -> bool:
    """Conjunction of the four criteria: event kind within the window,
    stars, size, license."""
    return (
        meta.event_kind in cfg.required_event_kinds
        and cfg.window_start <= meta.last_event_time <= cfg.window_end
        and meta.stars >= cfg.min_stars
        and cfg.min_size_bytes <= meta.size_bytes <= cfg.max_size_bytes
        and meta.license_id in cfg.allowed_licenses
    )


@dataclass
class HarvestStats:
    events_read: int = 0
    malformed_lines: int = 0
    eligible_events: int = 0


_EVENT_FIELDS = ("repo_full_name", "stars", "size_bytes", "license", "event_kind", "created_at")


def _parse_event(line: str) -> RepoMeta:
    obj = json.loads(line)
    if not isinstance(obj, dict):
        raise ValueError("event must be a JSON object")
    for key in _EVENT_FIELDS:
        if key not in obj:
            raise ValueError(f"missing event field {key!r}")
    return RepoMeta(
        full_name=str(obj["repo_full_name"]),
        stars=int(obj["stars"]),
        size_bytes=int(obj["size_bytes"]),
        license_id=str(obj["license"]).lower(),
        last_event_time=parse_utc(str(obj["created_at"])),
        event_kind=str(obj["event_kind"]),
    )


def harvest(
    dump_paths: Sequence[str | Path],
    cfg: EligibilityConfig = EligibilityConfig(),
    stats: HarvestStats | None = None,
) -> list[RepoMeta]:
    """Scan event dumps and return eligible repositories, one per full_name,
    sorted by full_name.

    When a repository has several qualifying events, the earliest one (by
    created_at; ties by input order) supplies the recorded metadata.
    Malformed lines are skipped and counted; unreadable files are fatal.
    """
    if stats is None:
        stats = HarvestStats()
    best: dict[str, RepoMeta] = {}
    for path in dump_paths:
        with open(path, "r", encoding="utf-8") as fp:
            for line in fp:
                line = line.strip()
                if not line:
                    continue
                stats.events_read += 1
                try:
                    meta = _parse_event(line)
                except (ValueError, KeyError) as exc:
                    stats.malformed_lines += 1
                    log.debug("skipping malformed event line: %s", exc)
                    continue
                if not is_eligible(meta, cfg):
                    continue
                stats.eligible_events += 1
                seen = best.get(meta.full_name)
                if seen is None or meta.last_event_time < seen.last_event_time:
                    best[meta.full_name] = meta
    if stats.malformed_lines:
        log.warning("skipped %d malformed event lines", stats.malformed_lines)
    return [best[name] for name in sorted(best)]


def serialize_repo_meta(meta: RepoMeta) -> str:
    obj = {
        "full_name": meta.full_name,
        "stars": meta.stars,
        "size_bytes": meta.size_bytes,
        "license_id": meta.license_id,
        "last_event_time": format_utc(meta.last_event_time),
        "event_kind": meta.event_kind,
    }
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def parse_repo_meta(line: str) -> RepoMeta:
    obj = json.loads(line)
    return RepoMeta(
        full_name=obj["full_name"],
        stars=obj["stars"],
        size_bytes=obj["size_bytes"],
        license_id=obj["license_id"],
        last_event_time=parse_utc(obj["last_event_time"]),
        event_kind=obj["event_kind"],
    )


def write_repo_list(fp: TextIO, repos: Iterable[RepoMeta]) -> int:
    n = 0
    for meta in repos:
        fp.write(serialize_repo_meta(meta))
        fp.write("\n")
        n += 1
    return n


def read_repo_list(fp: TextIO) -> list[RepoMeta]:
    return [parse_repo_meta(line) for line in fp if line.strip()]
