"""Character-level edit distance, optimal alignment, and atomic edit extraction.

All operations work on Unicode scalar values (Python string items), so the
distance here is the same one the feature computation normalizes, and the
alignment backtrace is deterministic: ties are broken by preferring
match > substitute > delete > insert.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

# Below this size a plain two-row Python DP beats the numpy row kernel.
_SMALL_DP = 64

MATCH = "match"
SUBSTITUTE = "substitute"
DELETE = "delete"
INSERT = "insert"


class AlignOp(NamedTuple):
    """One step of a character alignment.

    src_index / tgt_index are the consumed positions; an insert consumes no
    source character (src_index is None) and a delete no target character.
    """

    op: str
    src_index: int | None
    tgt_index: int | None


@dataclass(frozen=True)
class AtomicEdit:
    """A maximal contiguous run of inserted, deleted, or substituted characters."""

    kind: str  # insert | delete | substitute
    src_start: int
    src_end: int
    tgt_start: int
    tgt_end: int
    src_text: str
    tgt_text: str

    def __post_init__(self):
        if self.kind not in (INSERT, DELETE, SUBSTITUTE):
            raise ValueError(f"bad atomic edit kind: {self.kind!r}")
        if self.kind == INSERT and (self.src_text or not self.tgt_text):
            raise ValueError("insert must have empty src_text and non-empty tgt_text")
        if self.kind == DELETE and (not self.src_text or self.tgt_text):
            raise ValueError("delete must have non-empty src_text and empty tgt_text")
        if self.kind == SUBSTITUTE and not (self.src_text and self.tgt_text):
            raise ValueError("substitute must have non-empty src_text and tgt_text")


def _trim_common(x: str, y: str) -> tuple[int, int]:
    """Length of the shared prefix and suffix (computed after the prefix)."""
    limit = min(len(x), len(y))
    p = 0
    while p < limit and x[p] == y[p]:
        p += 1
    s = 0
    while s < limit - p and x[len(x) - 1 - s] == y[len(y) - 1 - s]:
        s += 1
    return p, s


def _distance_small(x: str, y: str) -> int:
    prev = list(range(len(y) + 1))
    for i, cx in enumerate(x, start=1):
        curr = [i]
        for j, cy in enumerate(y, start=1):
            curr.append(min(prev[j] + 1, curr[j - 1] + 1, prev[j - 1] + (cx != cy)))
        prev = curr
    return prev[-1]


def _distance_rows(x: str, y: str) -> int:
    m = len(y)
    ycodes = np.fromiter((ord(c) for c in y), count=m, dtype=np.int64)
    idx = np.arange(m + 1, dtype=np.int64)
    prev = idx.copy()
    for i, cx in enumerate(x, start=1):
        cand = np.minimum(prev[:-1] + (ycodes != ord(cx)), prev[1:] + 1)
        # curr[j] = min(cand[j-1], curr[j-1] + 1) resolved by a prefix minimum
        prev = np.minimum.accumulate(np.concatenate(([i], cand - idx[1:]))) + idx
    return int(prev[-1])


def edit_distance(x: str, y: str) -> int:
    """Unit-cost Levenshtein distance between two strings."""
    p, s = _trim_common(x, y)
    x = x[p : len(x) - s]
    y = y[p : len(y) - s]
    if not x:
        return len(y)
    if not y:
        return len(x)
    if max(len(x), len(y)) <= _SMALL_DP:
        return _distance_small(x, y)
    return _distance_rows(x, y)


def _dp_matrix(x: str, y: str) -> np.ndarray:
    n, m = len(x), len(y)
    dp = np.empty((n + 1, m + 1), dtype=np.int64)
    dp[0] = np.arange(m + 1)
    if m == 0:
        dp[:, 0] = np.arange(n + 1)
        return dp
    ycodes = np.fromiter((ord(c) for c in y), count=m, dtype=np.int64)
    idx = np.arange(m + 1, dtype=np.int64)
    for i in range(1, n + 1):
        prev = dp[i - 1]
        cand = np.minimum(prev[:-1] + (ycodes != ord(x[i - 1])), prev[1:] + 1)
        dp[i] = np.minimum.accumulate(np.concatenate(([i], cand - idx[1:]))) + idx
    return dp


def align(x: str, y: str) -> list[AlignOp]:
    """Optimal unit-cost alignment of x onto y.

    The backtrace prefers match, then substitute, then delete, then insert,
    which pins down one alignment among the optimal ones. The number of
    non-match ops equals edit_distance(x, y).
    """
    dp = _dp_matrix(x, y)
    ops: list[AlignOp] = []
    i, j = len(x), len(y)
    while i > 0 or j > 0:
        cost = dp[i, j]
        if i > 0 and j > 0 and x[i - 1] == y[j - 1] and dp[i - 1, j - 1] == cost:
            ops.append(AlignOp(MATCH, i - 1, j - 1))
            i -= 1
            j -= 1
        elif i > 0 and j > 0 and dp[i - 1, j - 1] + 1 == cost:
            ops.append(AlignOp(SUBSTITUTE, i - 1, j - 1))
            i -= 1
            j -= 1
        elif i > 0 and dp[i - 1, j] + 1 == cost:
            ops.append(AlignOp(DELETE, i - 1, None))
            i -= 1
        else:
            ops.append(AlignOp(INSERT, None, j - 1))
            j -= 1
    ops.reverse()
    return ops


def alignment_cost(ops: Iterable[AlignOp]) -> int:
    """Number of non-match operations in an alignment."""
    return sum(1 for op in ops if op.op != MATCH)


def atomic_edits(x: str, y: str) -> list[AtomicEdit]:
    """Merge maximal runs of adjacent non-match alignment ops into atomic edits.

    Adjacent deletions and insertions collapse into a single substitution
    span. Applying the result to x (see apply_edits) reconstructs y exactly.
    """
    edits: list[AtomicEdit] = []
    si = ti = 0
    run_s = run_t = -1  # start offsets of the open run, -1 when closed

    def close():
        nonlocal run_s, run_t
        if run_s < 0:
            return
        src_text = x[run_s:si]
        tgt_text = y[run_t:ti]
        if src_text and tgt_text:
            kind = SUBSTITUTE
        elif src_text:
            kind = DELETE
        else:
            kind = INSERT
        edits.append(AtomicEdit(kind, run_s, si, run_t, ti, src_text, tgt_text))
        run_s = run_t = -1

    for op in align(x, y):
        if op.op == MATCH:
            close()
            si += 1
            ti += 1
            continue
        if run_s < 0:
            run_s, run_t = si, ti
        if op.op == SUBSTITUTE:
            si += 1
            ti += 1
        elif op.op == DELETE:
            si += 1
        else:
            ti += 1
    close()
    return edits


def apply_edits(x: str, edits: Iterable[AtomicEdit]) -> str:
    """Apply atomic edits (sorted by src_start, non-overlapping) to x."""
    out: list[str] = []
    cursor = 0
    for e in edits:
        out.append(x[cursor : e.src_start])
        out.append(e.tgt_text)
        cursor = e.src_end
    out.append(x[cursor:])
    return "".join(out)


def frequency_table(
    records: Iterable,
    top_n: int | None = None,
    typo_only: bool = False,
) -> dict[str, list[tuple[str, str, int]]]:
    """Count atomic edits over a corpus, grouped by edit language.

    Returns {lang: [(src_text, tgt_text, count), ...]} ranked by count
    descending, then (src_text, tgt_text) lexicographically. Edits without a
    language tag fall into the "unknown" group.
    """
    counters: dict[str, Counter] = {}
    for rec in records:
        for edit in rec.edits:
            if typo_only and not edit.is_typo:
                continue
            lang = edit.src.lang or "unknown"
            counter = counters.setdefault(lang, Counter())
            for atom in atomic_edits(edit.src.text, edit.tgt.text):
                counter[(atom.src_text, atom.tgt_text)] += 1
    tables: dict[str, list[tuple[str, str, int]]] = {}
    for lang in sorted(counters):
        ranked = sorted(counters[lang].items(), key=lambda kv: (-kv[1], kv[0]))
        if top_n is not None:
            ranked = ranked[:top_n]
        tables[lang] = [(src, tgt, n) for (src, tgt), n in ranked]
    return tables


def render_atom_text(s: str) -> str:
    """Human-readable form of an atomic edit side: whitespace shown as '_',
    the empty string as 'φ'."""
    if s == "":
        return "φ"
    return "".join("_" if c.isspace() else c for c in s)
