"""Domain types and the line-oriented JSON corpus format.

Every record is one commit with its edits, serialized as a single JSON
object per line with a fixed key order so corpus files are byte-stable
across runs. Optional fields are omitted when absent.
"""

from __future__ import annotations

import json
import re
import unicodedata
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Any, Iterable, Iterator, TextIO

CATEGORIES = ("mechanical", "spell", "grammatical", "semantic")
TYPO_CATEGORIES = frozenset({"mechanical", "spell", "grammatical"})
MAX_EDITS = 10
PROB_TYPO_THRESHOLD = 0.5

_COMMIT_RE = re.compile(r"^[0-9a-f]{40}$")


class ValidationError(ValueError):
    """A record violates an invariant; names the offending field."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field_name = field_name


class ParseError(ValueError):
    """A line is not valid JSON; carries the byte offset of the failure."""

    def __init__(self, message: str, byte_offset: int):
        super().__init__(f"{message} (byte offset {byte_offset})")
        self.byte_offset = byte_offset


@dataclass
class ParseWarnings:
    """Mutable counter for tolerated irregularities while parsing."""

    unknown_keys: int = 0


def nfc(text: str) -> str:
    """NFC-normalize text; applied once at ingestion time so edit distances
    are stable across equivalent Unicode encodings."""
    return unicodedata.normalize("NFC", text)


def _check_line_text(field_name: str, text: str) -> None:
    if "\n" in text or "\r" in text:
        raise ValidationError(field_name, "text must not contain newline characters")


@dataclass(frozen=True)
class RepoMeta:
    """Repository metadata as of one event, used by eligibility filtering."""

    full_name: str
    stars: int
    size_bytes: int
    license_id: str
    last_event_time: datetime
    event_kind: str

    def __post_init__(self):
        if self.full_name.count("/") != 1:
            raise ValidationError("full_name", f"expected exactly one '/': {self.full_name!r}")
        if self.stars < 0:
            raise ValidationError("stars", "must be >= 0")
        if self.size_bytes < 0:
            raise ValidationError("size_bytes", "must be >= 0")
        if self.license_id != self.license_id.lower():
            raise ValidationError("license_id", "must be lowercase")
        if self.last_event_time.tzinfo is None:
            raise ValidationError("last_event_time", "must be timezone-aware (UTC)")


@dataclass(frozen=True)
class EditSide:
    """One side of an edit: a single line of text plus optional annotations."""

    text: str
    lang: str | None = None
    ppl: float | None = None

    def __post_init__(self):
        _check_line_text("text", self.text)
        if self.ppl is not None and self.ppl < 1.0:
            raise ValidationError("ppl", f"perplexity must be >= 1, got {self.ppl}")


@dataclass(frozen=True)
class FeatureVector:
    """The three classifier statistics for one edit."""

    ppl_ratio: float
    norm_dist: float
    numeric_only: int

    def __post_init__(self):
        if not (1e-3 <= self.ppl_ratio <= 1e3):
            raise ValidationError("ppl_ratio", f"must lie in [1e-3, 1e3], got {self.ppl_ratio}")
        if not (0.0 <= self.norm_dist <= 1.0):
            raise ValidationError("norm_dist", f"must lie in [0, 1], got {self.norm_dist}")
        if self.numeric_only not in (0, 1):
            raise ValidationError("numeric_only", f"must be 0 or 1, got {self.numeric_only}")


@dataclass(frozen=True)
class Edit:
    """A source/target line pair with optional features and labels."""

    src: EditSide
    tgt: EditSide
    features: FeatureVector | None = None
    prob_typo: float | None = None
    is_typo: bool | None = None
    category: str | None = None

    def __post_init__(self):
        if self.src.text == self.tgt.text:
            raise ValidationError("src", "src.text and tgt.text must differ")
        if self.prob_typo is not None and not (0.0 <= self.prob_typo <= 1.0):
            raise ValidationError("prob_typo", f"must lie in [0, 1], got {self.prob_typo}")
        if self.is_typo is not None:
            if self.prob_typo is None:
                raise ValidationError("is_typo", "requires prob_typo to be present")
            if self.is_typo != (self.prob_typo >= PROB_TYPO_THRESHOLD):
                raise ValidationError(
                    "is_typo",
                    f"inconsistent with prob_typo={self.prob_typo} at the 0.5 convention",
                )
        if self.category is not None and self.category not in CATEGORIES:
            raise ValidationError("category", f"must be one of {CATEGORIES}, got {self.category!r}")


@dataclass(frozen=True)
class CommitRecord:
    """One commit with its metadata and 1..10 edits; the corpus unit."""

    repo: str
    commit: str
    message: str
    edits: tuple[Edit, ...]

    def __post_init__(self):
        object.__setattr__(self, "edits", tuple(self.edits))
        self._validate()

    def _validate(self):
        if not self.repo:
            raise ValidationError("repo", "must be non-empty")
        if not _COMMIT_RE.match(self.commit):
            raise ValidationError("commit", f"must be 40 lowercase hex chars, got {self.commit!r}")
        if not 1 <= len(self.edits) <= MAX_EDITS:
            raise ValidationError("edits", f"must contain 1..{MAX_EDITS} edits, got {len(self.edits)}")


def _side_to_obj(side: EditSide) -> dict[str, Any]:
    obj: dict[str, Any] = {"text": side.text}
    if side.lang is not None:
        obj["lang"] = side.lang
    if side.ppl is not None:
        obj["ppl"] = side.ppl
    return obj


def _edit_to_obj(edit: Edit) -> dict[str, Any]:
    obj: dict[str, Any] = {"src": _side_to_obj(edit.src), "tgt": _side_to_obj(edit.tgt)}
    if edit.features is not None:
        obj["features"] = {
            "ppl_ratio": edit.features.ppl_ratio,
            "norm_dist": edit.features.norm_dist,
            "numeric_only": edit.features.numeric_only,
        }
    if edit.prob_typo is not None:
        obj["prob_typo"] = edit.prob_typo
    if edit.is_typo is not None:
        obj["is_typo"] = edit.is_typo
    if edit.category is not None:
        obj["category"] = edit.category
    return obj


def serialize_commit(rec: CommitRecord) -> str:
    """Serialize one record to a single JSON line (no trailing newline)."""
    rec._validate()
    obj = {
        "repo": rec.repo,
        "commit": rec.commit,
        "message": rec.message,
        "edits": [_edit_to_obj(e) for e in rec.edits],
    }
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


_SIDE_KEYS = {"text", "lang", "ppl"}
_EDIT_KEYS = {"src", "tgt", "features", "prob_typo", "is_typo", "category"}
_RECORD_KEYS = {"repo", "commit", "message", "edits"}
_FEATURE_KEYS = {"ppl_ratio", "norm_dist", "numeric_only"}


def _count_unknown(obj: dict, known: set[str], warnings: ParseWarnings | None) -> None:
    if warnings is None:
        return
    warnings.unknown_keys += sum(1 for k in obj if k not in known)


def _expect(obj: Any, typ, field_name: str):
    if typ is float and isinstance(obj, int) and not isinstance(obj, bool):
        return float(obj)
    if not isinstance(obj, typ) or (typ is not bool and isinstance(obj, bool)):
        raise ValidationError(field_name, f"expected {typ.__name__}, got {type(obj).__name__}")
    return obj


def _side_from_obj(obj: Any, field_name: str, warnings: ParseWarnings | None) -> EditSide:
    if not isinstance(obj, dict):
        raise ValidationError(field_name, "expected an object")
    _count_unknown(obj, _SIDE_KEYS, warnings)
    if "text" not in obj:
        raise ValidationError(f"{field_name}.text", "missing")
    return EditSide(
        text=_expect(obj["text"], str, f"{field_name}.text"),
        lang=_expect(obj["lang"], str, f"{field_name}.lang") if "lang" in obj else None,
        ppl=_expect(obj["ppl"], float, f"{field_name}.ppl") if "ppl" in obj else None,
    )


def _edit_from_obj(obj: Any, warnings: ParseWarnings | None) -> Edit:
    if not isinstance(obj, dict):
        raise ValidationError("edits", "each edit must be an object")
    _count_unknown(obj, _EDIT_KEYS, warnings)
    for key in ("src", "tgt"):
        if key not in obj:
            raise ValidationError(key, "missing")
    features = None
    if "features" in obj:
        fobj = obj["features"]
        if not isinstance(fobj, dict):
            raise ValidationError("features", "expected an object")
        _count_unknown(fobj, _FEATURE_KEYS, warnings)
        for key in _FEATURE_KEYS:
            if key not in fobj:
                raise ValidationError(f"features.{key}", "missing")
        features = FeatureVector(
            ppl_ratio=_expect(fobj["ppl_ratio"], float, "features.ppl_ratio"),
            norm_dist=_expect(fobj["norm_dist"], float, "features.norm_dist"),
            numeric_only=_expect(fobj["numeric_only"], int, "features.numeric_only"),
        )
    return Edit(
        src=_side_from_obj(obj["src"], "src", warnings),
        tgt=_side_from_obj(obj["tgt"], "tgt", warnings),
        features=features,
        prob_typo=_expect(obj["prob_typo"], float, "prob_typo") if "prob_typo" in obj else None,
        is_typo=_expect(obj["is_typo"], bool, "is_typo") if "is_typo" in obj else None,
        category=_expect(obj["category"], str, "category") if "category" in obj else None,
    )


def parse_commit(line: str, warnings: ParseWarnings | None = None) -> CommitRecord:
    """Parse one JSON line back into a CommitRecord.

    Unknown keys are tolerated; when a ParseWarnings is supplied, its
    unknown_keys counter is incremented for each one.
    """
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        byte_offset = len(line[: exc.pos].encode("utf-8", errors="replace"))
        raise ParseError(exc.msg, byte_offset) from exc
    if not isinstance(obj, dict):
        raise ValidationError("record", "expected a JSON object")
    _count_unknown(obj, _RECORD_KEYS, warnings)
    for key in ("repo", "commit", "message", "edits"):
        if key not in obj:
            raise ValidationError(key, "missing")
    edits_obj = obj["edits"]
    if not isinstance(edits_obj, list):
        raise ValidationError("edits", "expected an array")
    return CommitRecord(
        repo=_expect(obj["repo"], str, "repo"),
        commit=_expect(obj["commit"], str, "commit"),
        message=_expect(obj["message"], str, "message"),
        edits=[_edit_from_obj(e, warnings) for e in edits_obj],
    )


def read_corpus(fp: TextIO, warnings: ParseWarnings | None = None) -> Iterator[CommitRecord]:
    """Yield records from an open JSONL stream, skipping blank lines."""
    for line in fp:
        line = line.rstrip("\n")
        if line:
            yield parse_commit(line, warnings)


def write_corpus(fp: TextIO, records: Iterable[CommitRecord]) -> int:
    """Write records as UTF-8 JSONL with LF line endings; returns the count."""
    n = 0
    for rec in records:
        fp.write(serialize_commit(rec))
        fp.write("\n")
        n += 1
    return n


def format_utc(ts: datetime) -> str:
    """Render a timezone-aware datetime as an ISO-8601 UTC string with Z."""
    return ts.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def parse_utc(value: str) -> datetime:
    """Parse an ISO-8601 timestamp; a trailing Z is accepted, naive times are
    taken as UTC."""
    text = value.strip()
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    ts = datetime.fromisoformat(text)
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)
