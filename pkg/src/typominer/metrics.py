"""Corpus statistics, per-category spell-checker scoring, and the t-test.

Precision defaults to 1 when a system never fires for a category, matching
the convention used in checker evaluations where "no prediction" is not
penalized on precision.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from scipy.special import betainc

from .align import AtomicEdit, atomic_edits
from .corpus import CommitRecord

OTHER_CATEGORY = "OTHER"


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    def __post_init__(self):
        if self.tp < 0 or self.fp < 0 or self.fn < 0:
            raise ValueError("confusion counts must be non-negative")


@dataclass(frozen=True)
class LangStats:
    lang: str
    n_commits: int
    n_typo_edits: int | None  # None when no edit in this row carries a label
    n_all_edits: int
    n_chars: int


@dataclass(frozen=True)
class StatsReport:
    rows: tuple[LangStats, ...]
    total: LangStats

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if self.total.n_all_edits != sum(r.n_all_edits for r in self.rows):
            raise ValueError("total edits must equal the sum over languages")
        for r in self.rows:
            if r.n_typo_edits is not None and r.n_typo_edits > r.n_all_edits:
                raise ValueError(f"{r.lang}: typo edits exceed all edits")


def fbeta_from_pr(p: float, r: float, beta: float) -> float:
    """F-beta from precision and recall; 0 when both are 0."""
    if beta <= 0:
        raise ValueError("beta must be positive")
    if p == 0.0 and r == 0.0:
        return 0.0
    b2 = beta * beta
    return (1.0 + b2) * p * r / (b2 * p + r)


def precision_recall_fbeta(c: ConfusionCounts, beta: float) -> tuple[float, float, float]:
    """(precision, recall, F-beta) with the zero-denominator conventions
    p=1 when tp+fp=0 and r=1 when tp+fn=0."""
    p = 1.0 if c.tp + c.fp == 0 else c.tp / (c.tp + c.fp)
    r = 1.0 if c.tp + c.fn == 0 else c.tp / (c.tp + c.fn)
    return p, r, fbeta_from_pr(p, r, beta)


def _atom_key(atom: AtomicEdit) -> tuple[int, int, str]:
    # Replacement identity: same source span, same replacement text. The
    # target offsets depend on the rest of the hypothesis line, so they are
    # not part of the key.
    return atom.src_start, atom.src_end, atom.tgt_text


def _spans_touch(a: AtomicEdit, b: AtomicEdit) -> bool:
    # Closed-interval overlap on source offsets so empty insert spans can
    # still be attributed to an adjacent gold span.
    return a.src_start <= b.src_end and b.src_start <= a.src_end


def score_system(
    gold: Sequence[tuple[str, str, str, str]],
    system: Mapping[str, str],
) -> dict[str, ConfusionCounts]:
    """Score system corrections against gold edits, per category.

    gold rows are (id, category, src, tgt); system maps id -> corrected
    line. Both are decomposed into atomic edits against the same source.
    Exact span+replacement matches are true positives; unmatched gold edits
    are false negatives; unmatched system edits are false positives,
    attributed to the gold category when they overlap a gold span and to
    OTHER otherwise.
    """
    gold_ids = [g[0] for g in gold]
    if len(set(gold_ids)) != len(gold_ids):
        dupes = sorted({i for i in gold_ids if gold_ids.count(i) > 1})
        raise ValueError(f"duplicate gold ids: {dupes}")
    missing = sorted(set(gold_ids) - set(system))
    extra = sorted(set(system) - set(gold_ids))
    if missing or extra:
        raise ValueError(
            f"id mismatch between gold and system: missing from system {missing}, "
            f"unknown to gold {extra}"
        )

    tp: dict[str, int] = defaultdict(int)
    fp: dict[str, int] = defaultdict(int)
    fn: dict[str, int] = defaultdict(int)
    for edit_id, category, src, tgt in gold:
        gold_atoms = atomic_edits(src, tgt)
        sys_atoms = atomic_edits(src, system[edit_id])
        gold_keys = {_atom_key(a) for a in gold_atoms}
        sys_keys = {_atom_key(a) for a in sys_atoms}
        for atom in gold_atoms:
            if _atom_key(atom) in sys_keys:
                tp[category] += 1
            else:
                fn[category] += 1
        for atom in sys_atoms:
            if _atom_key(atom) in gold_keys:
                continue
            if any(_spans_touch(atom, g) for g in gold_atoms):
                fp[category] += 1
            else:
                fp[OTHER_CATEGORY] += 1
    return {
        cat: ConfusionCounts(tp=tp[cat], fp=fp[cat], fn=fn[cat])
        for cat in sorted(set(tp) | set(fp) | set(fn))
    }


def corpus_stats(records: Iterable[CommitRecord]) -> StatsReport:
    """Per-language commit/edit/character counts plus a total row.

    A commit counts once for every language it touches, so per-language
    commit counts can exceed the total. The typo-edit column is absent
    (None) for rows where no edit carries an is_typo label.
    """
    commits: dict[str, int] = defaultdict(int)
    typo: dict[str, int] = defaultdict(int)
    labeled: dict[str, bool] = defaultdict(bool)
    edits: dict[str, int] = defaultdict(int)
    chars: dict[str, int] = defaultdict(int)
    total_commits = 0
    for rec in records:
        total_commits += 1
        langs_in_commit = set()
        for edit in rec.edits:
            lang = edit.src.lang or "unknown"
            langs_in_commit.add(lang)
            edits[lang] += 1
            chars[lang] += len(edit.src.text) + len(edit.tgt.text)
            if edit.is_typo is not None:
                labeled[lang] = True
                if edit.is_typo:
                    typo[lang] += 1
        for lang in langs_in_commit:
            commits[lang] += 1
    rows = tuple(
        LangStats(
            lang=lang,
            n_commits=commits[lang],
            n_typo_edits=typo[lang] if labeled[lang] else None,
            n_all_edits=edits[lang],
            n_chars=chars[lang],
        )
        for lang in sorted(edits, key=lambda l: (-edits[l], l))
    )
    any_labeled = any(r.n_typo_edits is not None for r in rows)
    total = LangStats(
        lang="total",
        n_commits=total_commits,
        n_typo_edits=sum(r.n_typo_edits or 0 for r in rows) if any_labeled else None,
        n_all_edits=sum(r.n_all_edits for r in rows),
        n_chars=sum(r.n_chars for r in rows),
    )
    return StatsReport(rows=rows, total=total)


def welch_ttest(a: Sequence[float], b: Sequence[float]) -> tuple[float, float]:
    """Welch's two-sample t statistic and the two-tailed p-value.

    Degrees of freedom follow Welch-Satterthwaite; the p-value comes from
    the regularized incomplete beta function.
    """
    na, nb = len(a), len(b)
    if na < 2 or nb < 2:
        raise ValueError("each sample needs at least two observations")
    ma = math.fsum(a) / na
    mb = math.fsum(b) / nb
    va = math.fsum((x - ma) ** 2 for x in a) / (na - 1)
    vb = math.fsum((x - mb) ** 2 for x in b) / (nb - 1)
    if va == 0.0 and vb == 0.0:
        raise ValueError("both samples are degenerate (zero variance)")
    sa, sb = va / na, vb / nb
    se = math.sqrt(sa + sb)
    t = (ma - mb) / se
    dof = (sa + sb) ** 2 / (
        (sa * sa / (na - 1) if sa else 0.0) + (sb * sb / (nb - 1) if sb else 0.0)
    )
    p = float(betainc(dof / 2.0, 0.5, dof / (dof + t * t)))
    return t, p
