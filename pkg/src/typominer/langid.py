"""Language detection and code/non-language filtering for edits.

Detection uses per-language character n-gram profiles (order <= 3) scored as
add-one-smoothed conditional probabilities; code-likeness is a surface
heuristic over symbol density and identifier shapes. Both are substitutes
for heavier neural detectors: the contract is the filtering behaviour, not
the detector internals.
"""

from __future__ import annotations

import json
import math
import random
import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping, Sequence

from .corpus import Edit

PROFILE_ORDER = 3
MIN_PROFILE_CHARS = 10_000
MIN_DETECT_CHARS = 4
DEFAULT_CONFIDENCE_FLOOR = 0.5
DEFAULT_CODE_THRESHOLD = 0.5

UNK = "\x01"

_FORMAT = "typominer-langprofile"
_VERSION = 1

_NORMALIZATION_TOL = 1e-9
_NORMALIZATION_SAMPLE = 200

_CODE_CHARS = frozenset("{}();=<>[]|&#$\\/@*+~`^%")
_IDENT_RE = re.compile(r"[a-z][A-Z]|[A-Za-z0-9]_[A-Za-z0-9]")


class ProfileError(ValueError):
    pass


def _symbolize(ch: str) -> str:
    return UNK if ch == UNK else ch


@dataclass
class LangProfile:
    """Conditional character n-gram statistics for one language.

    counts[k] maps a length-k context to {next_char: count}; log-probs are
    derived once at construction. Immutable after that; scoring is pure.
    """

    lang: str
    order: int
    counts: list[dict[str, dict[str, int]]]
    prior: float = 0.0
    ngram_logprobs: dict[str, float] = field(default_factory=dict, repr=False)
    _unseen_logprob: dict[str, float] = field(default_factory=dict, repr=False)
    _alphabet: frozenset[str] = frozenset()

    def __post_init__(self):
        if not 1 <= self.order <= PROFILE_ORDER:
            raise ProfileError(f"order must be 1..{PROFILE_ORDER}, got {self.order}")
        if len(self.counts) != self.order:
            raise ProfileError("counts must hold one table per context length 0..order-1")
        self._alphabet = frozenset(self.counts[0].get("", {}))
        if not self._alphabet:
            raise ProfileError(f"profile for {self.lang!r} has no observed characters")
        # observed characters plus the UNK slot (union, in case training text
        # contained the UNK codepoint itself)
        vocab = len(self._alphabet | {UNK})
        self.ngram_logprobs = {}
        self._unseen_logprob = {}
        for table in self.counts:
            for ctx, nxt in table.items():
                total = sum(nxt.values())
                denom = total + vocab
                for ch, cnt in nxt.items():
                    self.ngram_logprobs[ctx + ch] = math.log((cnt + 1) / denom)
                self._unseen_logprob[ctx] = math.log(1.0 / denom)
        self._validate_normalization()

    @property
    def alphabet(self) -> frozenset[str]:
        return self._alphabet

    def _char_logprob(self, ch: str, ctx: str) -> float:
        ch = _symbolize(ch)
        if ch not in self._alphabet:
            ch = UNK
        while True:
            hit = self.ngram_logprobs.get(ctx + ch)
            if hit is not None:
                return hit
            fallback = self._unseen_logprob.get(ctx)
            if fallback is not None:
                return fallback
            if not ctx:  # empty context is always populated
                raise AssertionError("empty context missing from profile")
            ctx = ctx[1:]

    def log_score(self, text: str) -> float:
        """Log-probability of the text under this profile, plus the prior."""
        symbols = [_symbolize(c) for c in text]
        score = self.prior
        for i, ch in enumerate(symbols):
            ctx = "".join(symbols[max(0, i - self.order + 1) : i])
            score += self._char_logprob(ch, ctx)
        return score

    def _validate_normalization(self) -> None:
        # Sum over alphabet + UNK must be 1 for every context; exhaustively
        # when cheap, otherwise on a seeded sample of contexts.
        contexts = [ctx for table in self.counts for ctx in table]
        vocab = len(self._alphabet | {UNK})
        if len(contexts) * vocab > 1_000_000:
            rng = random.Random(0)
            contexts = rng.sample(contexts, _NORMALIZATION_SAMPLE)
        symbols = sorted(self._alphabet | {UNK})
        for ctx in contexts:
            total = math.fsum(math.exp(self._char_logprob(ch, ctx)) for ch in symbols)
            if abs(total - 1.0) > _NORMALIZATION_TOL:
                raise ProfileError(
                    f"profile {self.lang!r}: next-char mass at context {ctx!r} "
                    f"sums to {total!r}"
                )

    def save(self, path) -> None:
        payload = {
            "format": _FORMAT,
            "version": _VERSION,
            "lang": self.lang,
            "order": self.order,
            "prior": self.prior,
            "counts": self.counts,
        }
        Path(path).write_text(
            json.dumps(payload, ensure_ascii=False, sort_keys=True), encoding="utf-8"
        )

    @classmethod
    def load(cls, path) -> "LangProfile":
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        if payload.get("format") != _FORMAT or payload.get("version") != _VERSION:
            raise ProfileError(f"not a {_FORMAT} v{_VERSION} file: {path}")
        return cls(
            lang=payload["lang"],
            order=payload["order"],
            counts=payload["counts"],
            prior=payload["prior"],
        )


def train_profile(
    lang: str,
    text: str,
    order: int = PROFILE_ORDER,
    min_chars: int = MIN_PROFILE_CHARS,
    prior: float = 0.0,
) -> LangProfile:
    """Build one language profile from raw training text."""
    symbols = [_symbolize(c) for c in text if c not in ("\n", "\r")]
    if len(symbols) < min_chars:
        raise ProfileError(
            f"corpus for {lang!r} too small: {len(symbols)} < {min_chars} characters"
        )
    counts: list[dict[str, dict[str, int]]] = [{} for _ in range(order)]
    for i, ch in enumerate(symbols):
        for k in range(min(order, i + 1)):
            ctx = "".join(symbols[i - k : i])
            nxt = counts[k].setdefault(ctx, {})
            nxt[ch] = nxt.get(ch, 0) + 1
    return LangProfile(lang=lang, order=order, counts=counts, prior=prior)


def train_profiles(
    corpora: Mapping[str, str | Path],
    order: int = PROFILE_ORDER,
    min_chars: int = MIN_PROFILE_CHARS,
) -> list[LangProfile]:
    """Train one profile per language from text files; uniform priors."""
    if not corpora:
        raise ProfileError("no corpora given")
    prior = math.log(1.0 / len(corpora))
    profiles = []
    for lang in sorted(corpora):
        text = Path(corpora[lang]).read_text(encoding="utf-8")
        profiles.append(train_profile(lang, text, order=order, min_chars=min_chars, prior=prior))
    return profiles


def load_profiles(directory, suffix: str = ".profile.json") -> list[LangProfile]:
    paths = sorted(Path(directory).glob(f"*{suffix}"))
    if not paths:
        raise ProfileError(f"no {suffix} files in {directory}")
    return [LangProfile.load(p) for p in paths]


def detect(text: str, profiles: Sequence[LangProfile]) -> tuple[str, float]:
    """Best-scoring language and its normalized posterior.

    Strings shorter than four characters come back as ("unknown", 0.0).
    """
    if not profiles:
        raise ProfileError("no profiles given")
    if len(text) < MIN_DETECT_CHARS:
        return "unknown", 0.0
    scores = sorted((p.log_score(text), p.lang) for p in profiles)
    best_score, best_lang = scores[-1]
    total = best_score + math.log(math.fsum(math.exp(s - best_score) for s, _ in scores))
    confidence = math.exp(best_score - total)
    return best_lang, min(confidence, 1.0)


def code_likeness(text: str) -> float:
    """Score in [0, 1]; higher means more code-like. Monotone in the fraction
    of code-symbol characters."""
    if not text:
        return 0.0
    sym_frac = sum(c in _CODE_CHARS for c in text) / len(text)
    has_ident = 1.0 if _IDENT_RE.search(text) else 0.0
    no_space = 1.0 if not any(c.isspace() for c in text) else 0.0
    return min(1.0, 3.0 * sym_frac + 0.3 * has_ident + 0.2 * no_space)


def filter_edit(
    edit: Edit,
    profiles: Sequence[LangProfile],
    code_threshold: float = DEFAULT_CODE_THRESHOLD,
    confidence_floor: float = DEFAULT_CONFIDENCE_FLOOR,
) -> Edit | None:
    """Keep an edit only when both sides look like the same human language.

    Returns the edit with lang tags filled in, or None when either side is
    code-like, either detection is unconfident, or the languages disagree.
    Text fields are never modified, so the decision is symmetric in src/tgt.
    """
    if code_likeness(edit.src.text) >= code_threshold:
        return None
    if code_likeness(edit.tgt.text) >= code_threshold:
        return None
    src_lang, src_conf = detect(edit.src.text, profiles)
    tgt_lang, tgt_conf = detect(edit.tgt.text, profiles)
    if src_conf < confidence_floor or tgt_conf < confidence_floor:
        return None
    if src_lang != tgt_lang:
        return None
    return replace(
        edit,
        src=replace(edit.src, lang=src_lang),
        tgt=replace(edit.tgt, lang=tgt_lang),
    )
