#!/usr/bin/env python3
"""Regenerate resources/manifest.tsv from the resource files.

Entry counts follow the loader's rules: comment and blank lines skipped,
entries trimmed, word lists lowercased before deduplication, smiley lists
kept case-sensitive.
"""

import argparse
import pathlib

WORD_LISTS = [
    "swn_pos", "swn_neg", "ol_pos", "ol_neg", "esw_pos", "esw_neg",
    "bsw_pos", "bsw_neg", "cbw_pos", "cbw_neg", "curse",
]
SMILEY_LISTS = ["smiley1_pos", "smiley1_neg", "smiley2"]


def entries(path, fold):
    out = set()
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        entry = line.strip(" \t\r")
        out.add(entry.lower() if fold else entry)
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("resources", nargs="?", default=pathlib.Path(__file__).parent.parent / "resources",
                        type=pathlib.Path)
    args = parser.parse_args()
    root = args.resources

    rows = []
    for role in WORD_LISTS:
        rel = f"lexicons/{role}.txt"
        rows.append((role, rel, len(entries(root / rel, fold=True))))
    for role in SMILEY_LISTS:
        rel = f"lexicons/{role}.txt"
        rows.append((role, rel, len(entries(root / rel, fold=False))))
    abbrev = [l for l in (root / "abbreviations.tsv").read_text(encoding="utf-8").splitlines()
              if l.strip() and not l.startswith("#")]
    rows.append(("abbreviations", "abbreviations.tsv", len(abbrev)))

    with open(root / "manifest.tsv", "w", encoding="utf-8") as f:
        f.write("# role\tpath\texpected_size\n")
        for role, rel, size in rows:
            f.write(f"{role}\t{rel}\t{size}\n")


if __name__ == "__main__":
    main()
