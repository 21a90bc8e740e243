"""Regenerate crates/core/data/porter_fixture.tsv.

Stems a deterministic sample of English words with NLTK's Porter stemmer in
MARTIN_EXTENSIONS mode (the variant that reproduces Martin Porter's published
voc.txt/output.txt pairs) and writes `word<TAB>stem` lines.

    pip install nltk english-words
    python scripts/gen_porter_fixture.py
"""
import pathlib

from english_words import get_english_words_set
from nltk.stem.porter import PorterStemmer

EXTRA = [
    "caresses", "ponies", "ties", "caress", "cats", "feed", "agreed",
    "plastered", "bled", "motoring", "sing", "conflated", "troubled", "sized",
    "hopping", "tanned", "falling", "hissing", "fizzed", "failing", "filing",
    "happy", "sky", "relational", "conditional", "rational", "valenci",
    "hesitanci", "digitizer", "conformabli", "radicalli", "differentli",
    "vileli", "analogousli", "vietnamization", "predication", "operator",
    "feudalism", "decisiveness", "hopefulness", "callousness", "formaliti",
    "sensitiviti", "sensibiliti", "triplicate", "formative", "formalize",
    "electriciti", "electrical", "hopeful", "goodness", "revival",
    "allowance", "inference", "airliner", "gyroscopic", "adjustable",
    "defensible", "irritant", "replacement", "adjustment", "dependent",
    "adoption", "homologou", "communism", "activate", "angulariti",
    "homologous", "effective", "bowdlerize", "probate", "rate", "cease",
    "controll", "roll", "generalization", "oscillators", "traditions",
    "traditional", "tradition", "does", "the", "music", "running", "runs",
    "echoing", "explanations", "explanation", "persuasive", "arguments",
]


def main() -> None:
    stemmer = PorterStemmer(mode=PorterStemmer.MARTIN_EXTENSIONS)
    words = sorted(get_english_words_set(["gcide"], lower=True, alpha=True))
    sample = set(words[::4]) | set(EXTRA)
    out = pathlib.Path(__file__).resolve().parent.parent / "crates/core/data/porter_fixture.tsv"
    with out.open("w", encoding="utf-8") as fh:
        for w in sorted(sample):
            fh.write(f"{w}\t{stemmer.stem(w, to_lowercase=False)}\n")
    print(f"wrote {len(sample)} pairs to {out}")


if __name__ == "__main__":
    main()
