"""Smoothed character n-gram language model for perplexity scoring.

The model interpolates maximum-likelihood estimates with lower orders using
Witten-Bell weights, bottoming out in a uniform distribution over the
observed alphabet plus an unknown-symbol slot, so every next-character
distribution sums to one exactly and every probability is strictly positive.
"""

from __future__ import annotations

import gzip
import json
import math
from dataclasses import dataclass, field
from typing import Iterable

BOS = "\x02"  # context padding, never predicted
UNK = "\x01"  # stand-in for characters unseen in training

DEFAULT_ORDER = 5
MIN_TRAIN_CHARS = 10_000

_FORMAT = "typominer-charlm"
_VERSION = 1


class InsufficientDataError(ValueError):
    pass


def _symbolize(ch: str) -> str:
    # Input text may legitimately contain the sentinel codepoints; fold them
    # into UNK so they can never impersonate padding.
    return UNK if ch in (BOS, UNK) else ch


@dataclass
class CharLangModel:
    """Count tables per context length plus the derived alphabet.

    counts[k] maps a length-k context string to {next_char: count}. The
    model is immutable after training; scoring is pure.
    """

    order: int
    counts: list[dict[str, dict[str, int]]]
    _totals: list[dict[str, tuple[int, int]]] = field(default_factory=list, repr=False)
    _alphabet: frozenset[str] = frozenset()

    def __post_init__(self):
        if self.order < 2:
            raise ValueError(f"order must be >= 2, got {self.order}")
        if len(self.counts) != self.order:
            raise ValueError("counts must hold one table per context length 0..order-1")
        self._totals = [
            {ctx: (sum(nxt.values()), len(nxt)) for ctx, nxt in table.items()}
            for table in self.counts
        ]
        self._alphabet = frozenset(self.counts[0].get("", {}))

    @property
    def alphabet(self) -> frozenset[str]:
        """Characters observed in training (BOS excluded)."""
        return self._alphabet

    @property
    def vocab_size(self) -> int:
        # observed characters plus the UNK slot (union: training text may
        # itself contain the UNK codepoint)
        return len(self._alphabet | {UNK})

    def _prob(self, ch: str, ctx: str) -> float:
        if not ctx:
            table = self.counts[0].get("", {})
            total, distinct = self._totals[0].get("", (0, 0))
            base = 1.0 / self.vocab_size
            if total == 0:
                return base
            return (table.get(ch, 0) + distinct * base) / (total + distinct)
        lower = self._prob(ch, ctx[1:])
        table = self.counts[len(ctx)].get(ctx)
        if table is None:
            return lower
        total, distinct = self._totals[len(ctx)][ctx]
        return (table.get(ch, 0) + distinct * lower) / (total + distinct)

    def prob(self, ch: str, context: str) -> float:
        """p(ch | context); unseen characters are scored as UNK, and only the
        trailing order-1 characters of the context are used."""
        ctx = "".join(_symbolize(c) for c in context)[-(self.order - 1):]
        return self._prob(_symbolize(ch), ctx)

    def next_char_distribution(self, context: str) -> dict[str, float]:
        """Full distribution over alphabet + UNK for the given context."""
        ctx = "".join(_symbolize(c) for c in context)[-(self.order - 1):]
        return {ch: self._prob(ch, ctx) for ch in sorted(self._alphabet | {UNK})}

    def log2_prob_text(self, text: str) -> float:
        if not text:
            raise ValueError("text must be non-empty")
        padded = BOS * (self.order - 1) + "".join(_symbolize(c) for c in text)
        lp = 0.0
        for i in range(self.order - 1, len(padded)):
            lp += math.log2(self._prob(padded[i], padded[i - self.order + 1 : i]))
        return lp

    def save(self, path) -> None:
        payload = {
            "format": _FORMAT,
            "version": _VERSION,
            "order": self.order,
            "counts": self.counts,
        }
        data = json.dumps(payload, ensure_ascii=False, sort_keys=True).encode("utf-8")
        # empty filename + fixed mtime keep the gzip header content-only:
        # identical models produce identical bytes
        with open(path, "wb") as raw, gzip.GzipFile(
            filename="", fileobj=raw, mode="wb", mtime=0
        ) as fp:
            fp.write(data)

    @classmethod
    def load(cls, path) -> "CharLangModel":
        with gzip.open(path, "rb") as fp:
            payload = json.loads(fp.read().decode("utf-8"))
        if payload.get("format") != _FORMAT or payload.get("version") != _VERSION:
            raise ValueError(f"not a {_FORMAT} v{_VERSION} file: {path}")
        return cls(order=payload["order"], counts=payload["counts"])


def train_lm(
    lines: Iterable[str],
    order: int = DEFAULT_ORDER,
    min_chars: int = MIN_TRAIN_CHARS,
) -> CharLangModel:
    """Train count tables from an iterable of text lines.

    Each line is padded with order-1 BOS symbols and contributes one count
    per (context length, position). Deterministic given the input bytes.
    """
    if order < 2:
        raise ValueError(f"order must be >= 2, got {order}")
    counts: list[dict[str, dict[str, int]]] = [{} for _ in range(order)]
    n_chars = 0
    pad = BOS * (order - 1)
    for line in lines:
        line = line.rstrip("\n")
        if not line:
            continue
        n_chars += len(line)
        padded = pad + "".join(_symbolize(c) for c in line)
        for i in range(order - 1, len(padded)):
            ch = padded[i]
            for k in range(order):
                ctx = padded[i - k : i]
                nxt = counts[k].setdefault(ctx, {})
                nxt[ch] = nxt.get(ch, 0) + 1
    if n_chars < min_chars:
        raise InsufficientDataError(
            f"need at least {min_chars} training characters, got {n_chars}"
        )
    return CharLangModel(order=order, counts=counts)


def perplexity(model: CharLangModel, text: str) -> float:
    """Per-character perplexity 2^(-(1/L) * sum_i log2 p(x_i | context_i)).

    Always >= 1 since every conditional probability is at most 1.
    """
    if not text:
        raise ValueError("perplexity of empty text is undefined")
    return 2.0 ** (-model.log2_prob_text(text) / len(text))


def load_models(directory, suffix: str = ".lm") -> dict[str, CharLangModel]:
    """Load every <lang>.lm file from a directory into {lang: model}."""
    from pathlib import Path

    models: dict[str, CharLangModel] = {}
    for path in sorted(Path(directory).glob(f"*{suffix}")):
        models[path.name[: -len(suffix)]] = CharLangModel.load(path)
    return models
