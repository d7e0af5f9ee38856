#!/usr/bin/env python3
"""Regenerate every checked-in fixture under tests/fixtures/.

Everything is seeded, so reruns are byte-identical. Run from the repo root:

    python tools/regen_fixtures.py

Outputs: synthetic English/Japanese text, language-id profiles, character
LM files, perplexity test pairs, classifier annotations and trained
weights, the event dump, the diff-set repositories, and the golden
pipeline files produced by actually running the CLI stages.
"""

from __future__ import annotations

import hashlib
import json
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from typominer import charlm, classifier, langid  # noqa: E402
from typominer.cli import run as cli_run  # noqa: E402
from typominer.corpus import Edit, EditSide, nfc  # noqa: E402
from typominer.features import featurize  # noqa: E402

FIX = ROOT / "tests" / "fixtures"

SEED = 20240711

# ---------------------------------------------------------------------------
# synthetic English
# ---------------------------------------------------------------------------

SUBJECTS = [
    "the teacher", "my friend", "the old man", "a small dog", "the student",
    "her sister", "the tall gardener", "our neighbor", "the young writer",
    "his brother", "the quiet librarian", "a curious child", "the painter",
    "the baker", "my grandmother", "the new engineer", "the pilot",
    "a patient nurse", "the shopkeeper", "the musician",
]
VERBS = [
    "reads", "writes", "watches", "enjoys", "describes", "remembers",
    "carries", "finishes", "prepares", "collects", "paints", "borrows",
    "studies", "explains", "repairs", "forgets", "delivers", "opens",
]
OBJECTS = [
    "a long letter", "the morning paper", "an old novel", "the report",
    "a short story", "the wooden table", "a warm meal", "the garden gate",
    "a heavy book", "the broken clock", "a quiet song", "the small box",
    "an early draft", "the winter coat", "a fresh loaf", "the photo album",
    "a simple map", "the evening news", "a bright lamp", "the spare key",
]
PLACES = [
    "in the quiet library", "near the river", "at the old station",
    "behind the school", "in the kitchen", "under the bridge",
    "at the corner shop", "beside the window", "in the garden",
    "on the narrow street",
]
TIMES = [
    "every morning", "after lunch", "on sunday afternoons", "before dinner",
    "late at night", "during the holidays", "once a week", "in early spring",
]


def english_sentences(rng: random.Random, n: int) -> list[str]:
    seen = set()
    out = []
    while len(out) < n:
        pattern = rng.randrange(4)
        subj = rng.choice(SUBJECTS)
        verb = rng.choice(VERBS)
        obj = rng.choice(OBJECTS)
        if pattern == 0:
            s = f"{subj} {verb} {obj} {rng.choice(PLACES)}."
        elif pattern == 1:
            s = f"{rng.choice(TIMES)} {subj} {verb} {obj}."
        elif pattern == 2:
            s = f"{subj} {verb} {obj} and {rng.choice(VERBS)} {rng.choice(OBJECTS)}."
        else:
            s = f"{subj} {verb} {obj}."
        s = s[0].upper() + s[1:]
        if s not in seen:
            seen.add(s)
            out.append(s)
    return out


# ---------------------------------------------------------------------------
# synthetic Japanese
# ---------------------------------------------------------------------------

J_SUBJECTS = ["私", "彼", "彼女", "先生", "学生", "友達", "母", "父", "兄", "妹"]
J_OBJECTS = ["本", "手紙", "新聞", "映画", "音楽", "写真", "ご飯", "お茶", "雑誌", "物語"]
J_VERBS = [
    "読みます", "書きます", "見ます", "聞きます", "食べます", "飲みます",
    "撮ります", "作ります", "行きます", "買います", "使います", "会います",
]
J_PLACES = ["学校で", "家で", "公園で", "図書館で", "駅で", "店で"]
J_TIMES = ["今日", "明日", "昨日", "毎朝", "午後", "夜に"]


def japanese_sentences(rng: random.Random, n: int) -> list[str]:
    seen = set()
    out = []
    while len(out) < n:
        pattern = rng.randrange(3)
        subj = rng.choice(J_SUBJECTS)
        obj = rng.choice(J_OBJECTS)
        verb = rng.choice(J_VERBS)
        if pattern == 0:
            s = f"{subj}は{rng.choice(J_PLACES)}{obj}を{verb}。"
        elif pattern == 1:
            s = f"{rng.choice(J_TIMES)}、{subj}は{obj}を{verb}。"
        else:
            s = f"{subj}は{obj}を{verb}。"
        if s not in seen:
            seen.add(s)
            out.append(s)
    return out


# ---------------------------------------------------------------------------
# corruption operators (typo injection)
# ---------------------------------------------------------------------------

_NEIGHBORS = {
    "a": "sq", "b": "vn", "c": "xv", "d": "sf", "e": "wr", "f": "dg",
    "g": "fh", "h": "gj", "i": "uo", "j": "hk", "k": "jl", "l": "k",
    "m": "n", "n": "bm", "o": "ip", "p": "o", "q": "wa", "r": "et",
    "s": "ad", "t": "ry", "u": "yi", "v": "cb", "w": "qe", "x": "zc",
    "y": "tu", "z": "x",
}


def corrupt(rng: random.Random, sentence: str) -> str:
    letters = [i for i, c in enumerate(sentence) if c.isalpha() and c.islower()]
    if len(letters) < 4:
        return sentence
    for _ in range(rng.randrange(1, 3)):
        i = rng.choice(letters)
        op = rng.randrange(4)
        if op == 0 and i + 1 < len(sentence) and sentence[i + 1].isalpha():
            sentence = sentence[:i] + sentence[i + 1] + sentence[i] + sentence[i + 2 :]
        elif op == 1:
            sentence = sentence[:i] + sentence[i + 1 :]
        elif op == 2:
            sentence = sentence[:i] + sentence[i] + sentence[i:]
        else:
            ch = sentence[i]
            sentence = sentence[:i] + rng.choice(_NEIGHBORS.get(ch, ch)) + sentence[i + 1 :]
        letters = [i for i, c in enumerate(sentence) if c.isalpha() and c.islower()]
        if not letters:
            break
    return sentence


# ---------------------------------------------------------------------------
# code / prose calibration lines
# ---------------------------------------------------------------------------

CODE_LINES = [
    "int main(void) { return 0; }",
    "for (int i = 0; i < n; i++) {",
    "x += 1;",
    "result = compute_total(values);",
    "if (count == 0) { return -1; }",
    "printf(\"%d\\n\", total_sum);",
    "self.head_node = new_node;",
    "while (ptr != NULL) { ptr = ptr->next; }",
    "items[idx] = max(a, b);",
    "static int *q = &arr[0];",
    "def parse_args(argv): return argv[1:]",
    "return (a << 2) | (b & mask);",
    "data_map[key] = value_list;",
    "assert(buffer_size >= 0);",
    "err = do_work(ctx, &out);",
    "let total = items.map(|x| x * 2);",
    "catch (e) { console.log(e); }",
    "std::vector<int> xs = {1, 2, 3};",
    "y = (m * x) + b;",
    "foo_bar = baz_qux(1, 2);",
    "arr[i][j] = arr[j][i];",
    "fn next_token(&mut self) -> Token {",
    "#include <stdio.h>",
    "obj.innerHTML = `<div>${name}</div>`;",
    "p = &matrix[row][col];",
]

PROSE_LINES = [
    "The teacher reads a long letter every morning.",
    "My friend enjoys the quiet song after lunch.",
    "Rain fell softly on the narrow street all evening.",
    "She remembered the smell of fresh bread from childhood.",
    "The old clock in the hall strikes nine each night.",
    "We walked along the river until the sun went down.",
    "His brother collects old maps of distant towns.",
    "A warm meal waited for them in the kitchen.",
    "The librarian explained where the archives were kept.",
    "Nothing moves in the garden on hot afternoons.",
    "They carried the wooden table up the stairs together.",
    "Our neighbor borrows the morning paper on sundays.",
    "The young writer finished an early draft at last.",
    "Snow covered the station roof for most of january.",
    "Her sister prepares tea before the guests arrive.",
    "The painter watches the light change over the hills.",
    "Everyone forgot the spare key under the flower pot.",
    "A curious child opened the small box very slowly.",
    "The musician practised the same phrase for an hour.",
    "Letters from the coast arrived twice a month.",
    "The shopkeeper counts the coins at closing time.",
    "Dust settled on the photo album in the attic.",
    "The pilot described the storm in careful words.",
    "Bread and soup were enough on cold evenings.",
    "The gardener repairs the gate behind the school.",
]


# ---------------------------------------------------------------------------
# event dump + diff sets
# ---------------------------------------------------------------------------


def fake_sha(tag: str) -> str:
    return hashlib.sha1(tag.encode("utf-8")).hexdigest()


EVENTS = [
    {"repo_full_name": "alice/docs-good", "stars": 120, "size_bytes": 5_000_000,
     "license": "mit", "event_kind": "pull-request", "created_at": "2018-03-05T12:00:00Z"},
    {"repo_full_name": "alice/docs-good", "stars": 200, "size_bytes": 5_200_000,
     "license": "mit", "event_kind": "pull-request", "created_at": "2019-01-10T08:30:00Z"},
    {"repo_full_name": "bob/lowstars", "stars": 49, "size_bytes": 2_000_000,
     "license": "mit", "event_kind": "pull-request", "created_at": "2018-06-01T00:00:00Z"},
    {"repo_full_name": "carol/gpl-project", "stars": 500, "size_bytes": 50_000_000,
     "license": "gpl-3.0", "event_kind": "pull-request-review-comment",
     "created_at": "2018-07-15T09:00:00Z"},
]


def _diff(path: str, hunks: list[tuple[list[str], list[str], list[str], list[str]]]) -> str:
    """Build a unified-diff file section: each hunk is (pre-context,
    deletions, insertions, post-context)."""
    lines = [
        f"diff --git a/{path} b/{path}",
        "index 1111111..2222222 100644",
        f"--- a/{path}",
        f"+++ b/{path}",
    ]
    for pre, dels, ins, post in hunks:
        old_n = len(pre) + len(dels) + len(post)
        new_n = len(pre) + len(ins) + len(post)
        lines.append(f"@@ -1,{old_n} +1,{new_n} @@")
        lines.extend(f" {t}" for t in pre)
        lines.extend(f"-{t}" for t in dels)
        lines.extend(f"+{t}" for t in ins)
        lines.extend(f" {t}" for t in post)
    return "\n".join(lines) + "\n"


ALICE_COMMITS = [
    # (tag, message, diff builder) — tip first
    ("alice-c5", "typo: fix version number", lambda: _diff("docs/intro.md", [
        (["# Intro"],
         ["This document describes version 1.2 of the api."],
         ["This document describes version 1.3 of the api."],
         [""]),
    ])),
    ("alice-c4", "Typo fixes everywhere", lambda: _diff("notes.md", [
        ([],
         [f"Old entry number {i:02d} goes here." for i in range(1, 12)],
         [f"New entry number {i:02d} goes here!" for i in range(1, 12)],
         []),
    ])),
    ("alice-c3", "fix typos in docs", lambda: _diff("docs/guide.md", [
        (["## Setup"],
         ["Thsi guide explains the setup."],
         ["This guide explains the setup."],
         ["Read on."]),
        (["```c"],
         ["if (x == 1) { return; }"],
         ["if (x == 2) { return; }"],
         ["```"]),
    ]) + _diff("docs/ja.md", [
        (["# 案内"],
         ["私は学校にいきます。"],
         ["私は学校に行きます。"],
         []),
    ])),
    ("alice-c2", "Add new feature section", lambda: _diff("docs/features.md", [
        (["# Features"],
         [],
         ["A brand new section about features."],
         []),
    ])),
    ("alice-c1", "Fix typo in readme", lambda: _diff("README.md", [
        (["# Project"],
         ["Teh quick brown fox jumps over teh lazy dog."],
         ["The quick brown fox jumps over the lazy dog."],
         ["More text here."]),
    ])),
]

BOB_COMMITS = [
    ("bob-c1", "fix typo", lambda: _diff("README.md", [
        ([], ["A tpyo here."], ["A typo here."], []),
    ])),
]


def write_diffset(root: Path, full_name: str, commits) -> None:
    root.mkdir(parents=True, exist_ok=True)
    (root / "repo.json").write_text(
        json.dumps({"full_name": full_name}) + "\n", encoding="utf-8"
    )
    with open(root / "commits.jsonl", "w", encoding="utf-8", newline="\n") as fp:
        for tag, message, build in commits:
            fp.write(json.dumps({"commit": fake_sha(tag), "message": message}) + "\n")
    for tag, _, build in commits:
        (root / f"{fake_sha(tag)}.diff").write_text(build(), encoding="utf-8")


# ---------------------------------------------------------------------------
# classifier annotations
# ---------------------------------------------------------------------------


def build_annotations(rng: random.Random, sentences: list[str]) -> list[tuple[str, str, str]]:
    """(src, tgt, category) rows: 2/3 typo edits, 1/3 semantic edits."""
    rows: list[tuple[str, str, str]] = []
    pool = list(sentences)
    # spell: corrupted -> clean
    for s in pool[:60]:
        bad = corrupt(rng, s)
        if bad != s:
            rows.append((bad, s, "spell"))
    # mechanical: lowercased first letter / dropped period -> clean
    for s in pool[60:80]:
        bad = s[0].lower() + s[1:]
        if rng.random() < 0.5 and bad.endswith("."):
            bad = bad[:-1]
        if bad != s:
            rows.append((bad, s, "mechanical"))
    # grammatical: mangled verb agreement -> clean
    for s in pool[80:100]:
        bad = None
        for verb in VERBS:
            if f" {verb} " in s:
                bad = s.replace(f" {verb} ", f" {verb[:-1]} ", 1)
                break
        if bad and bad != s:
            rows.append((bad, s, "grammatical"))
    # semantic: content-word swaps and numeric changes, both directions fluent
    for i, s in enumerate(pool[100:140]):
        for obj in OBJECTS:
            if obj in s:
                others = [o for o in OBJECTS if o != obj]
                rows.append((s, s.replace(obj, rng.choice(others), 1), "semantic"))
                break
    for i in range(20):
        a = rng.randrange(1, 9)
        s = f"The meeting starts at {a} and ends at {a + 1}."
        rows.append((s, s.replace(str(a), str(a + 2), 1).replace(str(a + 1), str(a + 3), 1),
                     "semantic"))
    rng.shuffle(rows)
    return rows


# ---------------------------------------------------------------------------
# main
# ---------------------------------------------------------------------------


def main() -> None:
    rng = random.Random(SEED)
    for sub in ("text", "profiles", "models", "diffsets", "golden"):
        (FIX / sub).mkdir(parents=True, exist_ok=True)

    eng_all = english_sentences(rng, 2100)
    eng_train, eng_ppl, eng_holdout, eng_annot = (
        eng_all[:1600], eng_all[1600:1800], eng_all[1800:1900], eng_all[1900:2100]
    )
    jpn_all = japanese_sentences(rng, 1200)
    jpn_train, jpn_holdout = jpn_all[:1100], jpn_all[1100:1200]

    (FIX / "text" / "eng_clean.txt").write_text("\n".join(eng_train) + "\n", encoding="utf-8")
    (FIX / "text" / "jpn_clean.txt").write_text("\n".join(jpn_train) + "\n", encoding="utf-8")
    (FIX / "text" / "code_lines.txt").write_text("\n".join(CODE_LINES) + "\n", encoding="utf-8")
    (FIX / "text" / "prose_lines.txt").write_text("\n".join(PROSE_LINES) + "\n", encoding="utf-8")

    # calibration sanity: the fixture must actually separate under the heuristic
    for line in CODE_LINES:
        assert langid.code_likeness(line) >= 0.5, f"code line too prose-like: {line!r}"
    for line in PROSE_LINES:
        assert langid.code_likeness(line) < 0.2, f"prose line too code-like: {line!r}"

    # perplexity-direction pairs: corrupted source, clean target
    with open(FIX / "ppl_pairs.tsv", "w", encoding="utf-8", newline="\n") as fp:
        n = 0
        for s in eng_ppl:
            bad = corrupt(rng, s)
            if bad == s:
                continue
            fp.write(f"{bad}\t{s}\n")
            n += 1
        assert n >= 195, n

    with open(FIX / "langid_holdout.tsv", "w", encoding="utf-8", newline="\n") as fp:
        for s in eng_holdout:
            fp.write(f"eng\t{s}\n")
        for s in jpn_holdout:
            fp.write(f"jpn\t{s}\n")

    profiles = langid.train_profiles(
        {"eng": FIX / "text" / "eng_clean.txt", "jpn": FIX / "text" / "jpn_clean.txt"}
    )
    for profile in profiles:
        profile.save(FIX / "profiles" / f"{profile.lang}.profile.json")

    eng_lm = charlm.train_lm(eng_train)
    eng_lm.save(FIX / "models" / "eng.lm")
    jpn_lm = charlm.train_lm(jpn_train)
    jpn_lm.save(FIX / "models" / "jpn.lm")

    rows = build_annotations(rng, eng_annot)
    with open(FIX / "annotations.tsv", "w", encoding="utf-8", newline="\n") as fp:
        for src, tgt, category in rows:
            fp.write(f"{src}\t{tgt}\t{category}\n")

    examples = []
    for src, tgt, category in rows:
        edit = Edit(src=EditSide(text=nfc(src)), tgt=EditSide(text=nfc(tgt)))
        fv, _ = featurize(edit, eng_lm)
        examples.append(classifier.LabeledExample(fv, classifier.label_from_category(category)))
    weights = classifier.train(examples, trained_on="annotations.tsv")
    weights.save(FIX / "weights.json")
    n_pos = sum(e.label for e in examples)
    acc = sum(
        (classifier.predict(weights, e.features) >= 0.5) == e.label for e in examples
    ) / len(examples)
    print(f"annotations: {len(rows)} rows ({n_pos} typo), training accuracy {acc:.3f}")
    print(f"weights: {weights}")

    with open(FIX / "events.jsonl", "w", encoding="utf-8", newline="\n") as fp:
        for event in EVENTS:
            fp.write(json.dumps(event) + "\n")
        fp.write("this line is not json\n")

    write_diffset(FIX / "diffsets" / "alice__docs-good", "alice/docs-good", ALICE_COMMITS)
    write_diffset(FIX / "diffsets" / "bob__lowstars", "bob/lowstars", BOB_COMMITS)

    # golden pipeline, produced by the real CLI stages
    golden = FIX / "golden"
    stages = [
        ["harvest", "--dump", str(FIX / "events.jsonl"), "--out", str(golden / "eligible.jsonl"),
         "--quiet"],
        ["extract", "--diff-dir", str(FIX / "diffsets"), "--eligible", str(golden / "eligible.jsonl"),
         "--out", str(golden / "extracted.jsonl"), "--quiet"],
        ["langfilter", "--in", str(golden / "extracted.jsonl"), "--profiles", str(FIX / "profiles"),
         "--out", str(golden / "langfiltered.jsonl"), "--quiet"],
        ["featurize", "--in", str(golden / "langfiltered.jsonl"), "--models", str(FIX / "models"),
         "--out", str(golden / "featurized.jsonl"), "--quiet"],
        ["classify", "--in", str(golden / "featurized.jsonl"), "--weights", str(FIX / "weights.json"),
         "--out", str(golden / "pipeline.jsonl"), "--quiet"],
        ["stats", "--in", str(golden / "pipeline.jsonl"), "--out", str(golden / "stats.tsv"),
         "--quiet"],
    ]
    for argv in stages:
        code = cli_run(argv)
        assert code == 0, f"stage failed ({code}): {argv}"
    for manifest in golden.glob("*.manifest.json"):
        manifest.unlink()  # volatile; regenerated by runs, not fixture data

    print("golden pipeline:")
    print((golden / "pipeline.jsonl").read_text(encoding="utf-8"))
    print((golden / "stats.tsv").read_text(encoding="utf-8"))


if __name__ == "__main__":
    main()
