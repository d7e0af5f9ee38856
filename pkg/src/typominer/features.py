"""Per-edit statistics feeding the typo classifier.

Three features per edit: the perplexity ratio of target over source under a
character language model, the normalized edit distance, and a flag for
edits whose changed spans are purely digits.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Mapping

from .align import atomic_edits, edit_distance
from .charlm import CharLangModel, perplexity
from .corpus import Edit, FeatureVector

PPL_RATIO_MIN = 1e-3
PPL_RATIO_MAX = 1e3

_ASCII_DIGITS = frozenset("0123456789")


class MissingModelError(KeyError):
    """No language model is available for an edit's language."""


def norm_edit_distance(x: str, y: str) -> float:
    """Levenshtein distance divided by the longer string's length, in [0, 1].

    Both strings empty gives 0.
    """
    longer = max(len(x), len(y))
    if longer == 0:
        return 0.0
    return edit_distance(x, y) / longer


def numeric_only(x: str, y: str) -> bool:
    """True iff every changed span between x and y consists solely of ASCII
    digits on both sides (empty sides of inserts/deletes qualify)."""
    return all(
        all(c in _ASCII_DIGITS for c in atom.src_text)
        and all(c in _ASCII_DIGITS for c in atom.tgt_text)
        for atom in atomic_edits(x, y)
    )


def _clamp_ratio(value: float) -> float:
    return min(max(value, PPL_RATIO_MIN), PPL_RATIO_MAX)


def featurize(edit: Edit, model: CharLangModel) -> tuple[FeatureVector, Edit]:
    """Compute the feature vector for one edit under the given model.

    Returns the features together with a copy of the edit whose sides carry
    the computed perplexities; the input edit is left untouched.
    """
    src_ppl = perplexity(model, edit.src.text)
    tgt_ppl = perplexity(model, edit.tgt.text)
    fv = FeatureVector(
        ppl_ratio=_clamp_ratio(tgt_ppl / src_ppl),
        norm_dist=norm_edit_distance(edit.src.text, edit.tgt.text),
        numeric_only=int(numeric_only(edit.src.text, edit.tgt.text)),
    )
    annotated = replace(
        edit,
        src=replace(edit.src, ppl=src_ppl),
        tgt=replace(edit.tgt, ppl=tgt_ppl),
        features=fv,
    )
    return fv, annotated


def featurize_with_models(
    edit: Edit, models: Mapping[str, CharLangModel]
) -> tuple[FeatureVector, Edit]:
    """Featurize using the model matching the edit's language tag.

    Raises MissingModelError when no model exists for the language; callers
    in the pipeline skip such edits with a warning.
    """
    lang = edit.src.lang
    if lang is None or lang not in models:
        raise MissingModelError(lang)
    return featurize(edit, models[lang])
