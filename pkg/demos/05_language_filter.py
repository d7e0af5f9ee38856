#!/usr/bin/env python3
"""Language filtering: n-gram detection plus a code-likeness heuristic.

An edit survives only when both sides look like the same human language:
code-like lines, low-confidence detections, and cross-language pairs are
dropped (the bundled pipeline applies this between extraction and
featurization).
"""

from typominer import Edit, EditSide
from typominer.langid import code_likeness, detect, filter_edit, train_profile

ENGLISH = (
    "the teacher reads a long letter every morning. "
    "we walked along the river until the sun went down. "
    "letters from the coast arrived twice a month. "
) * 80
JAPANESE = ("私は学校で本を読みます。彼は毎朝新聞を読みます。友達は音楽を聞きます。") * 300


def main():
    profiles = [train_profile("eng", ENGLISH), train_profile("jpn", JAPANESE)]

    print("detection (language, confidence):")
    for text in [
        "the shopkeeper counts the coins",
        "彼は毎朝新聞を読みます。",
        "xy",  # too short
    ]:
        print(f"  {detect(text, profiles)}  <- {text!r}")

    print("\ncode-likeness (0 = prose, 1 = code):")
    for line in [
        "This sentence is plain prose.",
        "int main(void) { return 0; }",
        "x += 1;",
        "self.head_node = new_node;",
    ]:
        print(f"  {code_likeness(line):.2f}  {line}")

    print("\nfiltering edits:")
    cases = [
        ("typo fix, both English", "teh coins at closing time", "the coins at closing time"),
        ("language mismatch", "the morning paper", "彼は毎朝新聞を読みます。"),
        ("code on both sides", "x += 1;", "x += 2;"),
        ("too short to call", "ab", "ba"),
    ]
    for label, src, tgt in cases:
        edit = Edit(src=EditSide(text=src), tgt=EditSide(text=tgt))
        kept = filter_edit(edit, profiles)
        verdict = f"kept as {kept.src.lang}" if kept else "dropped"
        print(f"  {verdict:>14}  {label}")


if __name__ == "__main__":
    main()
