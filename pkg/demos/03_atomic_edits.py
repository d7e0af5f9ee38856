#!/usr/bin/env python3
"""Atomic edits: minimal character alignment and the spans it produces.

An atomic edit is a maximal contiguous run of inserted, deleted, or
substituted characters under a minimal-cost alignment. Applying the edits
to the source always reconstructs the target.
"""

from typominer import CommitRecord, Edit, EditSide
from typominer.align import (
    align,
    apply_edits,
    atomic_edits,
    edit_distance,
    frequency_table,
    render_atom_text,
)

PAIRS = [
    ("teh", "the"),
    ("color", "colour"),
    ("helo wrld", "hello world"),
    ("recieve the pacakge", "receive the package"),
    ("version 1.2", "version 1.3"),
    ("私は学校にいきます。", "私は学校に行きます。"),
]


def main():
    for src, tgt in PAIRS:
        atoms = atomic_edits(src, tgt)
        ops = "".join(op.op[0] for op in align(src, tgt))
        print(f"{src!r} -> {tgt!r}   distance={edit_distance(src, tgt)}  ops={ops}")
        for a in atoms:
            print(f"    {a.kind:>10}  src[{a.src_start}:{a.src_end}]="
                  f"{render_atom_text(a.src_text)!r} -> {render_atom_text(a.tgt_text)!r}")
        assert apply_edits(src, atoms) == tgt
    print("\nall pairs reconstructed exactly\n")

    # aggregate over a toy corpus, the way the report command does
    records = []
    for i, (src, tgt) in enumerate(PAIRS * 2):
        records.append(CommitRecord(
            repo="demo/corpus", commit=f"{i:040x}", message="typo",
            edits=[Edit(src=EditSide(text=src, lang="eng"), tgt=EditSide(text=tgt, lang="eng"))],
        ))
    print("most frequent atomic edits (whitespace -> '_', empty -> 'φ'):")
    for lang, table in frequency_table(records, top_n=5).items():
        for src_text, tgt_text, count in table:
            print(f"  {lang}  {render_atom_text(src_text)} -> "
                  f"{render_atom_text(tgt_text)}  ({count})")


if __name__ == "__main__":
    main()
