import os
import subprocess

import pytest

from typominer.corpus import serialize_commit
from typominer.extract import (
    DiffHunk,
    DiffLine,
    DiffsetRepo,
    ExtractConfig,
    ExtractStats,
    GitError,
    discover_repos,
    extract_commit,
    extract_repo,
    is_typo_commit,
    open_repo,
    pair_edits,
    parse_unified_diff,
)

from conftest import FIXTURES

ALICE = FIXTURES / "diffsets" / "alice__docs-good"


def test_is_typo_commit_examples():
    assert is_typo_commit("Fix typo in README")
    assert is_typo_commit("Typos: correct spelling")
    assert not is_typo_commit("refactor parser")
    assert is_typo_commit("TYPO TYPO TYPO")
    assert not is_typo_commit("Typo fix", case_sensitive=True)
    assert is_typo_commit("a typo fix", case_sensitive=True)
    assert is_typo_commit("fiks stavefeil", keyword="stavefeil")


def _hunk(*tagged):
    return DiffHunk(lines=tuple(DiffLine(tag, text) for tag, text in tagged))


def test_pair_edits_one_to_one():
    hunk = _hunk(("deletion", "teh cat"), ("insertion", "the cat"))
    assert pair_edits([hunk]) == [("teh cat", "the cat")]


def test_pair_edits_unbalanced_runs():
    hunk = _hunk(("deletion", "a"), ("deletion", "b"), ("insertion", "a2"))
    assert pair_edits([hunk]) == [("a", "a2")]


def test_pair_edits_insertion_only():
    assert pair_edits([_hunk(("insertion", "new line only"))]) == []


def test_pair_edits_context_breaks_runs():
    hunk = _hunk(
        ("deletion", "one"),
        ("context", "mid"),
        ("insertion", "uno"),
    )
    assert pair_edits([hunk]) == []


def test_pair_edits_multiple_groups_positional():
    hunk = _hunk(
        ("deletion", "a1"), ("deletion", "b1"),
        ("insertion", "a2"), ("insertion", "b2"), ("insertion", "c2"),
        ("deletion", "x1"),
        ("insertion", "x2"),
    )
    assert pair_edits([hunk]) == [("a1", "a2"), ("b1", "b2"), ("x1", "x2")]


def test_pair_edits_drops_identical():
    hunk = _hunk(("deletion", "same"), ("insertion", "same"))
    assert pair_edits([hunk]) == []


def test_pair_edits_never_emits_equal_pair():
    import random

    rng = random.Random(77)
    for _ in range(200):
        lines = []
        for _ in range(rng.randrange(0, 12)):
            tag = rng.choice(["deletion", "insertion", "context"])
            lines.append((tag, rng.choice(["aa", "bb", "cc"])))
        for src, tgt in pair_edits([_hunk(*lines)]):
            assert src != tgt


DIFF_TEXT = """\
diff --git a/README.md b/README.md
index 1111111..2222222 100644
--- a/README.md
+++ b/README.md
@@ -1,2 +1,2 @@
 # Title
-Teh cat.
+The cat.
@@ -10,1 +10,1 @@ def section
-wrld
+world
diff --git a/image.png b/image.png
Binary files a/image.png and b/image.png differ
diff --git a/other.txt b/other.txt
--- a/other.txt
+++ b/other.txt
@@ -1 +1 @@
-old line
+new line
"""


def test_parse_unified_diff_hunks_and_binary():
    hunks, skipped = parse_unified_diff(DIFF_TEXT)
    assert skipped == 1
    assert len(hunks) == 3
    assert hunks[0].lines[0] == DiffLine("context", "# Title")
    assert pair_edits(hunks) == [
        ("Teh cat.", "The cat."),
        ("wrld", "world"),
        ("old line", "new line"),
    ]


def test_parse_unified_diff_crlf_payloads():
    text = "--- a/f\n+++ b/f\n@@ -1 +1 @@\n-old\r\n+new\r\n"
    hunks, _ = parse_unified_diff(text)
    assert pair_edits(hunks) == [("old", "new")]


def test_parse_unified_diff_no_newline_marker():
    text = "--- a/f\n+++ b/f\n@@ -1 +1 @@\n-old\n\\ No newline at end of file\n+new\n"
    hunks, _ = parse_unified_diff(text)
    assert pair_edits(hunks) == [("old", "new")]


def test_parse_unified_diff_content_resembling_headers():
    # hunk bodies are consumed by the header counts, so payloads that start
    # with header-like markers ("-- item" deleted, "++ item" inserted) parse
    # as content, not as new file sections
    text = (
        "--- a/f\n+++ b/f\n"
        "@@ -1,2 +1,2 @@\n"
        " intro\n"
        "--- item one\n"
        "+++ item 1\n"
    )
    hunks, skipped = parse_unified_diff(text)
    assert skipped == 0
    assert pair_edits(hunks) == [("-- item one", "++ item 1")]


def test_parse_unified_diff_malformed_hunk_skipped():
    # counts promise more lines than the body provides
    text = "--- a/f\n+++ b/f\n@@ -1,5 +1,5 @@\n-only\n+pair\n"
    hunks, skipped = parse_unified_diff(text)
    assert hunks == []
    assert skipped == 1
    # a malformed hunk does not poison later files
    text += "--- a/g\n+++ b/g\n@@ -1 +1 @@\n-a1\n+a2\n"
    hunks, skipped = parse_unified_diff(text)
    assert skipped == 1
    assert pair_edits(hunks) == [("a1", "a2")]


def test_diffset_repo_reads_fixture():
    repo = DiffsetRepo(ALICE)
    assert repo.name == "alice/docs-good"
    shas = repo.commits()
    assert len(shas) == 5
    assert repo.num_parents(shas[0]) == 1
    assert "typo" in repo.message(shas[0])


def test_extract_repo_from_diffset_counts():
    stats = ExtractStats()
    records = list(extract_repo(ALICE, stats=stats))
    assert len(records) == 3
    assert [len(r.edits) for r in records] == [1, 3, 1]
    assert stats.commits_seen == 5
    assert stats.commits_matched == 4  # c4 (11 edits) matched the keyword
    assert stats.commits_skipped_size == 1
    assert all(r.repo == "alice/docs-good" for r in records)


def test_extract_commit_eleven_edits_absent():
    repo = DiffsetRepo(ALICE)
    eleven = [sha for sha in repo.commits() if repo.message(sha) == "Typo fixes everywhere"]
    assert len(eleven) == 1
    assert extract_commit(repo, eleven[0]) is None


def test_extract_commit_applies_langfilter():
    repo = DiffsetRepo(ALICE)
    [c3] = [sha for sha in repo.commits() if repo.message(sha) == "fix typos in docs"]
    no_code = extract_commit(
        repo, c3, langfilter=lambda e: None if "{" in e.src.text else e
    )
    assert no_code is not None
    assert len(no_code.edits) == 2
    all_dropped = extract_commit(repo, c3, langfilter=lambda e: None)
    assert all_dropped is None


def test_extract_deterministic_bytes():
    first = [serialize_commit(r) for r in extract_repo(ALICE)]
    second = [serialize_commit(r) for r in extract_repo(ALICE)]
    assert first == second


def test_long_lines_dropped():
    cfg = ExtractConfig()
    hunk_src = "x" * 2001
    from typominer.extract import _build_edit

    assert _build_edit(hunk_src, "y", cfg) is None
    assert _build_edit("x" * 2000, "y", cfg) is not None


def test_nfc_normalization_at_ingestion():
    from typominer.extract import _build_edit

    decomposed = "café time"  # e + combining acute
    composed = "café time"
    edit = _build_edit(decomposed, "coffee time", ExtractConfig())
    assert edit.src.text == composed
    # pairs that become identical after NFC are dropped
    assert _build_edit(decomposed, composed, ExtractConfig()) is None


def test_open_repo_rejects_other_dirs(tmp_path):
    with pytest.raises(GitError):
        open_repo(tmp_path)


# --- git-backed tests -------------------------------------------------------

GIT_ENV = {
    **os.environ,
    "GIT_CONFIG_GLOBAL": "/dev/null",
    "GIT_CONFIG_SYSTEM": "/dev/null",
    "GIT_AUTHOR_NAME": "Fixture",
    "GIT_AUTHOR_EMAIL": "fixture@example.invalid",
    "GIT_COMMITTER_NAME": "Fixture",
    "GIT_COMMITTER_EMAIL": "fixture@example.invalid",
    "GIT_AUTHOR_DATE": "2020-01-01T00:00:00 +0000",
    "GIT_COMMITTER_DATE": "2020-01-01T00:00:00 +0000",
}


def _git(cwd, *args):
    subprocess.run(["git", "-C", str(cwd), *args], check=True, env=GIT_ENV,
                   capture_output=True)


def _commit_file(repo, name, content, message):
    (repo / name).write_text(content, encoding="utf-8")
    _git(repo, "add", name)
    _git(repo, "commit", "-q", "-m", message)


@pytest.fixture()
def git_repo(tmp_path):
    repo = tmp_path / "sample"
    repo.mkdir()
    _git(repo, "init", "-q", "-b", "main")
    _commit_file(repo, "readme.md", "Teh cat sat here.\nSecond line.\n", "initial import")
    _commit_file(repo, "readme.md", "The cat sat here.\nSecond line.\n", "fix typo in readme")
    _commit_file(repo, "notes.md", "Some notes.\n", "add notes")
    _commit_file(repo, "notes.md", "Some better notes.\n", "Typo cleanup in notes")
    return repo


def test_git_repo_extraction(git_repo):
    records = list(extract_repo(git_repo))
    assert [r.message for r in records] == ["Typo cleanup in notes", "fix typo in readme"]
    assert records[0].edits[0].src.text == "Some notes."
    assert records[0].edits[0].tgt.text == "Some better notes."
    assert records[1].edits[0].src.text == "Teh cat sat here."
    for r in records:
        assert r.repo == "sample"  # no origin configured: directory name


def test_git_non_master_default_branch_resolved(git_repo):
    # the fixture branch is "main"; extraction must not assume "master"
    repo = open_repo(git_repo)
    assert repo.default_branch() == "main"
    assert len(list(extract_repo(git_repo))) == 2


def test_git_merge_commit_skipped(git_repo):
    _git(git_repo, "checkout", "-q", "-b", "side")
    _commit_file(git_repo, "side.md", "Side text.\n", "side work")
    _git(git_repo, "checkout", "-q", "main")
    _commit_file(git_repo, "main.md", "Main text.\n", "main work")
    _git(git_repo, "merge", "-q", "--no-ff", "-m", "merge typo branch", "side")
    stats = ExtractStats()
    records = list(extract_repo(git_repo, stats=stats))
    assert all(r.message != "merge typo branch" for r in records)
    assert stats.commits_skipped_merge == 1


def test_git_repo_with_no_typo_commits(tmp_path):
    repo = tmp_path / "quiet"
    repo.mkdir()
    _git(repo, "init", "-q", "-b", "trunk")
    _commit_file(repo, "a.txt", "alpha\n", "first")
    _commit_file(repo, "a.txt", "beta\n", "second")
    assert list(extract_repo(repo)) == []


def test_git_origin_url_used_as_repo_name(git_repo):
    _git(git_repo, "remote", "add", "origin", "https://example.invalid/alice/sample.git")
    records = list(extract_repo(git_repo))
    assert all(r.repo == "https://example.invalid/alice/sample.git" for r in records)


def test_discover_repos_finds_both_kinds(tmp_path, git_repo):
    root = tmp_path / "root"
    root.mkdir()
    (root / "plain").mkdir()  # neither a repo nor a diff set
    os.symlink(ALICE, root / "aset")
    os.symlink(git_repo, root / "gitrepo")
    found = discover_repos(root)
    assert [p.name for p in found] == ["aset", "gitrepo"]
