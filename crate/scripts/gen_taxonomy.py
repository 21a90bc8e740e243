"""Regenerate crates/core/data/taxonomy.tsv from WordNet 3.0.

For every single-word lemma, writes the minimum `min_depth()` and maximum
`max_depth()` over all of its synsets (hypernym path lengths to the root,
root = 0), as `lemma<TAB>min_depth<TAB>max_depth`.

    NLTK_DATA=/path/with/corpora/wordnet python scripts/gen_taxonomy.py
"""
import pathlib
import warnings

from nltk.corpus import wordnet as wn

warnings.filterwarnings("ignore")


def main() -> None:
    out = pathlib.Path(__file__).resolve().parent.parent / "crates/core/data/taxonomy.tsv"
    rows = []
    for lemma in sorted(set(wn.all_lemma_names())):
        if not lemma.isalpha() or not lemma.islower():
            continue
        synsets = wn.synsets(lemma)
        if not synsets:
            continue
        lo = min(s.min_depth() for s in synsets)
        hi = max(s.max_depth() for s in synsets)
        rows.append(f"{lemma}\t{lo}\t{hi}\n")
    out.write_text("".join(rows), encoding="utf-8")
    print(f"wrote {len(rows)} lemmas to {out}")


if __name__ == "__main__":
    main()
