"""Commit enumeration and edit extraction from unified diffs.

Two repository backends share one extraction path: local git repositories
(read via the git executable) and "diff sets", directories of pre-produced
unified-diff files used for offline fixtures. A commit qualifies when its
message mentions the keyword, it has exactly one parent, and its diff pairs
into 1..10 line edits.
"""

from __future__ import annotations

import json
import logging
import re
import subprocess
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Iterator, NamedTuple

from .corpus import CommitRecord, Edit, EditSide, ValidationError, nfc

log = logging.getLogger(__name__)

CONTEXT = "context"
DELETION = "deletion"
INSERTION = "insertion"

DEFAULT_KEYWORD = "typo"
DEFAULT_MAX_EDITS = 10
MAX_LINE_CHARS = 2_000  # longer lines are minified blobs, not prose


class DiffLine(NamedTuple):
    tag: str
    text: str


@dataclass(frozen=True)
class DiffHunk:
    """An ordered run of tagged diff lines between two context boundaries."""

    lines: tuple[DiffLine, ...]

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))
        for line in self.lines:
            if line.tag not in (CONTEXT, DELETION, INSERTION):
                raise ValueError(f"bad diff line tag: {line.tag!r}")


@dataclass(frozen=True)
class ExtractConfig:
    keyword: str = DEFAULT_KEYWORD
    case_sensitive: bool = False
    max_edits: int = DEFAULT_MAX_EDITS
    max_line_chars: int = MAX_LINE_CHARS


@dataclass
class ExtractStats:
    commits_seen: int = 0
    commits_matched: int = 0
    records_emitted: int = 0
    commits_skipped_merge: int = 0
    commits_skipped_size: int = 0
    commits_skipped_error: int = 0
    files_skipped: int = 0
    lines_dropped: int = 0


def is_typo_commit(message: str, keyword: str = DEFAULT_KEYWORD, case_sensitive: bool = False) -> bool:
    """True when the commit message contains the keyword (case-insensitive
    by default)."""
    if case_sensitive:
        return keyword in message
    return keyword.lower() in message.lower()


_TAG_BY_MARKER = {" ": CONTEXT, "-": DELETION, "+": INSERTION}
_HUNK_RE = re.compile(r"^@@ -\d+(?:,(\d+))? \+\d+(?:,(\d+))? @@")


def parse_unified_diff(text: str) -> tuple[list[DiffHunk], int]:
    """Parse unified-diff text into hunks across all files.

    Hunk bodies are consumed by the line counts in the @@ header, so
    content lines that happen to start with diff-header markers cannot be
    misread. Binary-file notices and malformed hunks are skipped and
    counted; the rest of the diff still parses. Returns (hunks, skipped).
    """
    hunks: list[DiffHunk] = []
    skipped = 0
    lines = text.split("\n")
    i = 0
    while i < len(lines):
        line = lines[i]
        if line.startswith("Binary files") or line.startswith("GIT binary patch"):
            skipped += 1
            i += 1
            continue
        header = _HUNK_RE.match(line)
        if header is None:
            i += 1
            continue
        remaining_old = int(header.group(1) or 1)
        remaining_new = int(header.group(2) or 1)
        i += 1
        body: list[DiffLine] = []
        ok = True
        while remaining_old > 0 or remaining_new > 0:
            if i >= len(lines):
                ok = False
                break
            raw = lines[i]
            payload = raw[:-1] if raw.endswith("\r") else raw
            if payload.startswith("\\"):  # "\ No newline at end of file"
                i += 1
                continue
            marker, content = (payload[0], payload[1:]) if payload else (" ", "")
            tag = _TAG_BY_MARKER.get(marker)
            if tag is None:
                ok = False
                break
            if tag == CONTEXT:
                remaining_old -= 1
                remaining_new -= 1
            elif tag == DELETION:
                remaining_old -= 1
            else:
                remaining_new -= 1
            if remaining_old < 0 or remaining_new < 0:
                ok = False
                break
            body.append(DiffLine(tag, content))
            i += 1
        if ok and body:
            hunks.append(DiffHunk(lines=tuple(body)))
        elif not ok:
            skipped += 1
    return hunks, skipped


def pair_edits(hunks: Iterable[DiffHunk]) -> list[tuple[str, str]]:
    """Pair deletion runs with the insertion runs that immediately follow.

    Within each hunk, a maximal run of k deletions followed by m insertions
    yields min(k, m) pairs, the i-th deletion with the i-th insertion.
    Pairs with identical text are dropped; order is preserved.
    """
    pairs: list[tuple[str, str]] = []
    for hunk in hunks:
        deletions: list[str] = []
        insertions: list[str] = []

        def flush():
            for src, tgt in zip(deletions, insertions):
                if src != tgt:
                    pairs.append((src, tgt))
            deletions.clear()
            insertions.clear()

        for tag, text in hunk.lines:
            if tag == DELETION:
                if insertions:
                    flush()
                deletions.append(text)
            elif tag == INSERTION:
                if deletions:
                    insertions.append(text)
                # insertions with no preceding deletion run are dropped
            else:
                flush()
        flush()
    return pairs


class GitError(RuntimeError):
    pass


class GitRepo:
    """Read-only view of a local git repository via the git executable."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        if not self.path.exists():
            raise GitError(f"no such repository path: {self.path}")
        self._messages: dict[str, str] = {}
        self._parents: dict[str, int] = {}

    def _git(self, *args: str) -> str:
        proc = subprocess.run(
            ["git", "-C", str(self.path), "-c", "core.quotepath=false", *args],
            capture_output=True,
        )
        if proc.returncode != 0:
            raise GitError(
                f"git {' '.join(args)} failed in {self.path}: "
                f"{proc.stderr.decode('utf-8', errors='replace').strip()}"
            )
        return proc.stdout.decode("utf-8", errors="replace")

    @property
    def name(self) -> str:
        """Origin URL when configured, else the directory name."""
        try:
            url = self._git("config", "--get", "remote.origin.url").strip()
            if url:
                return url
        except GitError:
            pass
        return self.path.name

    def default_branch(self) -> str:
        try:
            return self._git("symbolic-ref", "--short", "HEAD").strip()
        except GitError:
            return "HEAD"

    def commits(self) -> list[str]:
        """First-parent history of the default branch, tip to root."""
        branch = self.default_branch()
        out = self._git(
            "log", "--first-parent", "--format=%H%x1f%P%x1f%B%x1e", branch
        )
        shas = []
        for record in out.split("\x1e"):
            record = record.strip("\n")
            if not record:
                continue
            sha, parents, message = record.split("\x1f", 2)
            sha = sha.strip()
            shas.append(sha)
            self._parents[sha] = len(parents.split()) if parents.strip() else 0
            self._messages[sha] = message
        return shas

    def message(self, sha: str) -> str:
        if sha not in self._messages:
            self._messages[sha] = self._git("log", "-1", "--format=%B", sha).strip("\n")
        return self._messages[sha]

    def num_parents(self, sha: str) -> int:
        if sha not in self._parents:
            parents = self._git("log", "-1", "--format=%P", sha).split()
            self._parents[sha] = len(parents)
        return self._parents[sha]

    def diff(self, sha: str) -> str:
        return self._git("diff", "--no-color", "--no-renames", f"{sha}^", sha)


class DiffsetRepo:
    """A directory of pre-produced unified diffs standing in for a clone.

    Layout: repo.json ({"full_name": ...}), commits.jsonl (one
    {"commit", "message"} object per line, tip first), and one <sha>.diff
    file per commit.
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)
        meta_path = self.path / "repo.json"
        commits_path = self.path / "commits.jsonl"
        if not meta_path.is_file() or not commits_path.is_file():
            raise GitError(f"not a diff set (missing repo.json/commits.jsonl): {self.path}")
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
        self.full_name = meta["full_name"]
        self._order: list[str] = []
        self._messages: dict[str, str] = {}
        for line in commits_path.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            obj = json.loads(line)
            self._order.append(obj["commit"])
            self._messages[obj["commit"]] = obj["message"]

    @property
    def name(self) -> str:
        return self.full_name

    def commits(self) -> list[str]:
        return list(self._order)

    def message(self, sha: str) -> str:
        return self._messages[sha]

    def num_parents(self, sha: str) -> int:
        return 1

    def diff(self, sha: str) -> str:
        return (self.path / f"{sha}.diff").read_text(encoding="utf-8")


def _build_edit(src_text: str, tgt_text: str, cfg: ExtractConfig) -> Edit | None:
    src_text = nfc(src_text)
    tgt_text = nfc(tgt_text)
    if src_text == tgt_text:
        return None
    if len(src_text) > cfg.max_line_chars or len(tgt_text) > cfg.max_line_chars:
        return None
    if "\r" in src_text or "\r" in tgt_text:
        # interior carriage returns would break one-line records
        return None
    return Edit(src=EditSide(text=src_text), tgt=EditSide(text=tgt_text))


def extract_commit(
    repo,
    commit_id: str,
    langfilter: Callable[[Edit], Edit | None] | None = None,
    cfg: ExtractConfig = ExtractConfig(),
    stats: ExtractStats | None = None,
) -> CommitRecord | None:
    """Extract a record from one commit, or None when it does not qualify.

    Qualification: keyword in the message, exactly one parent, and between
    1 and max_edits paired edits before any language filtering.
    """
    if stats is None:
        stats = ExtractStats()
    message = repo.message(commit_id)
    if not is_typo_commit(message, cfg.keyword, cfg.case_sensitive):
        return None
    stats.commits_matched += 1
    if repo.num_parents(commit_id) != 1:
        stats.commits_skipped_merge += 1
        return None
    try:
        diff_text = repo.diff(commit_id)
    except (GitError, OSError) as exc:
        stats.commits_skipped_error += 1
        log.warning("skipping unreadable commit %s: %s", commit_id, exc)
        return None
    hunks, skipped_files = parse_unified_diff(diff_text)
    stats.files_skipped += skipped_files
    raw_pairs = pair_edits(hunks)
    if not raw_pairs or len(raw_pairs) > cfg.max_edits:
        stats.commits_skipped_size += 1
        return None
    edits: list[Edit] = []
    for src_text, tgt_text in raw_pairs:
        edit = _build_edit(src_text, tgt_text, cfg)
        if edit is None:
            stats.lines_dropped += 1
            continue
        if langfilter is not None:
            edit = langfilter(edit)
            if edit is None:
                continue
        edits.append(edit)
    if not edits:
        return None
    try:
        record = CommitRecord(repo=repo.name, commit=commit_id, message=message, edits=edits)
    except ValidationError as exc:
        stats.commits_skipped_error += 1
        log.warning("skipping commit %s: %s", commit_id, exc)
        return None
    stats.records_emitted += 1
    return record


def extract_repo(
    repo_or_path,
    langfilter: Callable[[Edit], Edit | None] | None = None,
    cfg: ExtractConfig = ExtractConfig(),
    stats: ExtractStats | None = None,
) -> Iterator[CommitRecord]:
    """Walk a repository (git clone, diff set, or an opened handle) and
    yield its records in first-parent, tip-to-root order."""
    repo = repo_or_path if hasattr(repo_or_path, "commits") else open_repo(repo_or_path)
    if stats is None:
        stats = ExtractStats()
    for sha in repo.commits():
        stats.commits_seen += 1
        record = extract_commit(repo, sha, langfilter=langfilter, cfg=cfg, stats=stats)
        if record is not None:
            yield record


def open_repo(path: str | Path):
    """Open a repository path as a git clone or a diff set."""
    path = Path(path)
    if (path / "repo.json").is_file() and (path / "commits.jsonl").is_file():
        return DiffsetRepo(path)
    if (path / ".git").exists() or (path / "HEAD").is_file():
        return GitRepo(path)
    raise GitError(f"not a git repository or diff set: {path}")


def discover_repos(root: str | Path) -> list[Path]:
    """Repository paths under a directory: the directory itself when it is a
    repository, else its immediate repository children, sorted by name."""
    root = Path(root)
    try:
        open_repo(root)
        return [root]
    except GitError:
        pass
    found = []
    for child in sorted(root.iterdir()):
        if not child.is_dir():
            continue
        try:
            open_repo(child)
            found.append(child)
        except GitError:
            continue
    return found
