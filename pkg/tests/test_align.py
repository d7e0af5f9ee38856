import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from typominer.align import (
    AtomicEdit,
    align,
    alignment_cost,
    apply_edits,
    atomic_edits,
    edit_distance,
    frequency_table,
    render_atom_text,
)
from typominer.corpus import CommitRecord, Edit, EditSide

from conftest import levenshtein_oracle, random_unicode_string


@pytest.mark.parametrize(
    "x,y,expected",
    [
        ("cat", "cat", 0),
        ("", "abc", 3),
        ("abc", "", 3),
        ("recieve", "receive", 2),
        ("kitten", "sitting", 3),
        ("teh", "the", 2),
        ("", "", 0),
        ("あいう", "あう", 1),
    ],
)
def test_distance_examples(x, y, expected):
    assert edit_distance(x, y) == expected


def test_distance_long_path_matches_small_path():
    # strings above the small-DP cutoff take the vectorized row kernel
    rng = random.Random(7)
    for _ in range(60):
        x = random_unicode_string(rng, 200)
        y = random_unicode_string(rng, 200)
        if max(len(x), len(y)) < 80:
            x = x * 3 + "abcdefgh" * 12
            y = y * 3 + "abcdefxy" * 12
        assert edit_distance(x, y) == levenshtein_oracle(x, y)


def test_align_matches_only_for_identical():
    ops = align("abc", "abc")
    assert [op.op for op in ops] == ["match", "match", "match"]


def test_align_helo_hello():
    ops = align("helo", "hello")
    assert alignment_cost(ops) == 1
    inserted = [op for op in ops if op.op == "insert"]
    assert len(inserted) == 1
    assert inserted[0].tgt_index is not None


def test_align_cost_equals_distance():
    assert alignment_cost(align("teh", "the")) == edit_distance("teh", "the") == 2


def test_atomic_identical_empty():
    assert atomic_edits("same", "same") == []


def test_atomic_teh_the_single_substitution():
    atoms = atomic_edits("teh", "the")
    assert len(atoms) == 1
    atom = atoms[0]
    assert atom.kind == "substitute"
    assert atom.src_text == "eh"
    assert atom.tgt_text == "he"


def test_atomic_color_colour_insert():
    atoms = atomic_edits("color", "colour")
    assert len(atoms) == 1
    assert atoms[0].kind == "insert"
    assert atoms[0].src_text == ""
    assert atoms[0].tgt_text == "u"


def test_atomic_edit_invariants_validated():
    with pytest.raises(ValueError):
        AtomicEdit("insert", 0, 0, 0, 1, "x", "y")
    with pytest.raises(ValueError):
        AtomicEdit("delete", 0, 1, 0, 0, "", "")
    with pytest.raises(ValueError):
        AtomicEdit("transpose", 0, 1, 0, 1, "a", "b")


def test_atomic_substrings_match_offsets():
    x, y = "the quick brown fox", "the quiet brown ox"
    for atom in atomic_edits(x, y):
        assert x[atom.src_start : atom.src_end] == atom.src_text
        assert y[atom.tgt_start : atom.tgt_end] == atom.tgt_text


def test_round_trip_random_pairs():
    rng = random.Random(20240711)
    for _ in range(500):
        x = random_unicode_string(rng, 30)
        y = random_unicode_string(rng, 30)
        atoms = atomic_edits(x, y)
        assert apply_edits(x, atoms) == y
        # edits are sorted and non-overlapping
        for a, b in zip(atoms, atoms[1:]):
            assert a.src_end <= b.src_start


@settings(max_examples=300, deadline=None)
@given(
    st.text(max_size=25),
    st.text(max_size=25),
)
def test_round_trip_property(x, y):
    atoms = atomic_edits(x, y)
    assert apply_edits(x, atoms) == y
    assert alignment_cost(align(x, y)) == edit_distance(x, y)


@settings(max_examples=300, deadline=None)
@given(st.text(max_size=20), st.text(max_size=20))
def test_atomic_cost_bounds_distance(x, y):
    # per-edit cost: span length for insert/delete, max span length for a
    # substitution; the total can only overestimate the optimal distance
    total = sum(
        max(len(a.src_text), len(a.tgt_text)) for a in atomic_edits(x, y)
    )
    assert total >= edit_distance(x, y)


def _record(pairs, lang="eng", is_typo=None):
    edits = []
    for src, tgt in pairs:
        prob = None if is_typo is None else (0.9 if is_typo else 0.1)
        edits.append(
            Edit(
                src=EditSide(text=src, lang=lang),
                tgt=EditSide(text=tgt, lang=lang),
                prob_typo=prob,
                is_typo=is_typo,
            )
        )
    return CommitRecord(repo="a/b", commit="1" * 40, message="typo", edits=edits)


def test_frequency_table_counts():
    records = [_record([("helo", "hello")]) for _ in range(3)]
    tables = frequency_table(records)
    assert tables == {"eng": [("", "l", 3)]}


def test_frequency_table_empty_corpus():
    assert frequency_table([]) == {}


def test_frequency_table_per_language_and_typo_only():
    records = [
        _record([("helo", "hello")], lang="eng", is_typo=True),
        _record([("wrld", "world")], lang="eng", is_typo=False),
        _record([("ねこ", "ねこが")], lang="jpn", is_typo=True),
    ]
    tables = frequency_table(records)
    assert set(tables) == {"eng", "jpn"}
    assert len(tables["eng"]) == 2
    typo_tables = frequency_table(records, typo_only=True)
    assert typo_tables["eng"] == [("", "l", 1)]
    assert typo_tables["jpn"] == [("", "が", 1)]


def test_frequency_table_ordering_and_top_n():
    records = [
        _record([("aX", "aY")]),
        _record([("aX", "aY")]),
        _record([("bX", "bY")]),
        _record([("cQ", "cR")]),
    ]
    table = frequency_table(records)["eng"]
    assert table[0] == ("X", "Y", 3)  # same atomic substitution from two contexts
    top1 = frequency_table(records, top_n=1)["eng"]
    assert top1 == [("X", "Y", 3)]


def test_render_atom_text_sentinels():
    assert render_atom_text("") == "φ"
    assert render_atom_text(" ") == "_"
    assert render_atom_text("a b") == "a_b"
