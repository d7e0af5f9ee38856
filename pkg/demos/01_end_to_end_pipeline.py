#!/usr/bin/env python3
"""End-to-end walkthrough: from an event dump and commit diffs to a labeled
typo corpus.

Builds a miniature world in a temp directory (one eligible repository, one
ineligible, three commits), trains the support models on inline sample
text, then runs every pipeline stage through the library API and prints
what survives at each step.
"""

import json
import tempfile
from pathlib import Path

from typominer import (
    EligibilityConfig,
    extract_repo,
    harvest,
    label_corpus,
    train,
    train_lm,
    train_profile,
)
from typominer.classifier import LabeledExample, label_from_category
from typominer.corpus import serialize_commit
from typominer.features import featurize
from typominer.langid import filter_edit
from typominer.metrics import corpus_stats

ENGLISH = [
    "the teacher reads a long letter every morning.",
    "my friend enjoys the quiet song after lunch.",
    "we walked along the river until the sun went down.",
    "a warm meal waited for them in the kitchen.",
    "the librarian explained where the archives were kept.",
    "letters from the coast arrived twice a month.",
    "the shopkeeper counts the coins at closing time.",
    "dust settled on the photo album in the attic.",
]

EVENTS = [
    {"repo_full_name": "demo/docs", "stars": 80, "size_bytes": 4_000_000,
     "license": "mit", "event_kind": "pull-request", "created_at": "2018-04-01T10:00:00Z"},
    {"repo_full_name": "demo/unpopular", "stars": 3, "size_bytes": 4_000_000,
     "license": "mit", "event_kind": "pull-request", "created_at": "2018-04-01T10:00:00Z"},
]

DIFF = """\
--- a/readme.md
+++ b/readme.md
@@ -1,2 +1,2 @@
 # Demo
-the teacher raeds a long lettter every morning.
+the teacher reads a long letter every morning.
--- a/main.c
+++ b/main.c
@@ -1 +1 @@
-int x = compute(1); /* {old} */
+int x = compute(2); /* {new} */
"""


def main():
    workdir = Path(tempfile.mkdtemp(prefix="typominer-demo-"))
    print(f"working in {workdir}\n")

    # 1. harvest: which repositories are even worth mining?
    dump = workdir / "events.jsonl"
    dump.write_text("\n".join(json.dumps(e) for e in EVENTS) + "\n", encoding="utf-8")
    eligible = harvest([dump], EligibilityConfig())
    print("eligible repositories:", [r.full_name for r in eligible])
    assert [r.full_name for r in eligible] == ["demo/docs"]

    # 2. extract: mine typo commits from a diff-set repository
    repo_dir = workdir / "demo__docs"
    repo_dir.mkdir()
    sha = "ab" * 20
    (repo_dir / "repo.json").write_text(json.dumps({"full_name": "demo/docs"}))
    (repo_dir / "commits.jsonl").write_text(
        json.dumps({"commit": sha, "message": "fix typo in readme"}) + "\n"
    )
    (repo_dir / f"{sha}.diff").write_text(DIFF, encoding="utf-8")
    records = list(extract_repo(repo_dir))
    print(f"\nextracted {len(records)} record(s); edits in the first:")
    for edit in records[0].edits:
        print(f"  {edit.src.text!r} -> {edit.tgt.text!r}")

    # 3. language filter: the C line is code, the prose line stays
    profile = train_profile("eng", " ".join(ENGLISH) * 30)
    kept = []
    for rec in records:
        edits = [e2 for e in rec.edits if (e2 := filter_edit(e, [profile]))]
        if edits:
            kept.append(rec.__class__(repo=rec.repo, commit=rec.commit,
                                      message=rec.message, edits=edits))
    print(f"\nafter language filtering: {sum(len(r.edits) for r in kept)} edit(s) kept")

    # 4. features: perplexity ratio, normalized distance, numeric flag
    model = train_lm(ENGLISH * 60, order=5)
    featurized = []
    for rec in kept:
        edits = [featurize(e, model)[1] for e in rec.edits]
        featurized.append(rec.__class__(repo=rec.repo, commit=rec.commit,
                                        message=rec.message, edits=edits))
    fv = featurized[0].edits[0].features
    print(f"features: ppl_ratio={fv.ppl_ratio:.3f} norm_dist={fv.norm_dist:.3f} "
          f"numeric_only={fv.numeric_only}")

    # 5. classify: a tiny training set is enough for a demo
    train_set = [
        LabeledExample(featurize(e, model)[0], label_from_category(cat))
        for e, cat in _toy_annotations(model)
    ]
    weights = train(train_set)
    labeled = list(label_corpus(featurized, weights))
    for rec in labeled:
        for edit in rec.edits:
            print(f"typo-ness {edit.prob_typo:.3f} is_typo={edit.is_typo}  "
                  f"{edit.src.text!r}")

    # 6. corpus stats and the JSONL output itself
    report = corpus_stats(labeled)
    print(f"\nstats: {report.total.n_commits} commit(s), "
          f"{report.total.n_all_edits} edit(s), {report.total.n_chars} chars")
    print("\nfinal JSONL line:")
    print(serialize_commit(labeled[0]))


def _toy_annotations(model):
    from typominer.corpus import Edit, EditSide

    pairs = [
        ("the shopkeeper counts the cions at closing time.", ENGLISH[6], "spell"),
        ("dust setled on the photo album in the attic.", ENGLISH[7], "spell"),
        ("letters from the cooast arrived twice a month.", ENGLISH[5], "spell"),
        ("my friend enjoys the quiet songg after lunch.", ENGLISH[1], "spell"),
        (ENGLISH[0], ENGLISH[0].replace("letter", "novel"), "semantic"),
        (ENGLISH[1], ENGLISH[1].replace("lunch", "dinner"), "semantic"),
        (ENGLISH[3], ENGLISH[3].replace("kitchen", "garden"), "semantic"),
        ("room 12 is open.", "room 14 is open.", "semantic"),
    ]
    for src, tgt, cat in pairs:
        yield Edit(src=EditSide(text=src), tgt=EditSide(text=tgt)), cat


if __name__ == "__main__":
    main()
