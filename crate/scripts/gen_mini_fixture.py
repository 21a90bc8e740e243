"""Writes the 20-triple fixture (triples + exchange annotations) used by the
feature oracle and pipeline tests."""

import json
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "crates/core/tests/fixtures"

WORDS = [
    "traditions", "tradition", "Traditional", "dogs", "dog", "running", "runs",
    "argument", "arguments", "people", "view", "views", "changed", "change",
    "government", "tax", "taxes", "city", "Paris", "Obama", "police", "law",
    "economy", "economic", "religion", "science", "evidence", "really", "think",
    "the", "a", "is", "and", "of", "to", "it", "that", "you", "not", "n't", "'s",
    "I", "my", "was", "were", "because", "more", "most", "42", "1990", "@url@",
    ".", ",", "!", "?", "...", "(", ")", "%", "$",
]
UPOS = ["ADP", "PRON", "X", "DET", "ADJ", "PROPN", "VERB", "PART", "CCONJ", "INTJ",
        "NOUN", "NUM", "ADV", "PUNCT", "SYM", "AUX", "SCONJ", "CONJ", "FOO"]
DEPS = ["nsubj", "nsubjpass", "csubj", "csubjpass", "agent", "expl", "dobj", "dative",
        "attr", "oprd", "amod", "prep", "pobj", "ROOT", "det", "advmod", ""]
ENTS = ["", "", "", "PERSON", "NORP", "FAC", "ORG", "GPE", "LOC", "PRODUCT", "EVENT",
        "WORK_OF_ART", "LAW", "LANGUAGE", "DATE", "CARDINAL", "MONEY"]


def token(rng, text):
    return {"text": text, "upos": rng.choice(UPOS), "dep": rng.choice(DEPS), "ent": rng.choice(ENTS)}


def doc(rng, n, pool=None):
    toks = []
    for _ in range(n):
        if pool and rng.random() < 0.5:
            text = rng.choice(pool)
        else:
            text = rng.choice(WORDS)
        toks.append(token(rng, text))
        if rng.random() < 0.08:
            toks.append(token(rng, '"'))
        if rng.random() < 0.03:
            toks.append({"text": " ", "upos": "SPACE", "dep": "", "ent": ""})
    return toks


def main():
    rng = random.Random(20240517)
    triples, docs = [], []
    start = 1_483_228_800  # 2017-01-01
    for i in range(20):
        tid = f"m{i:02d}"
        op = doc(rng, rng.randint(8, 30))
        pc = [] if i == 7 else doc(rng, rng.randint(5, 25), [t["text"] for t in op])
        if i == 11:
            op = []
            pc = doc(rng, 12)
        pool = [t["text"] for t in op + pc] or WORDS
        exp = doc(rng, rng.randint(3, 15), pool)
        texts = {k: " ".join(t["text"] for t in v if t["upos"] != "SPACE") for k, v in
                 (("op", op), ("pc", pc), ("exp", exp))}
        triples.append({
            "triple_id": tid,
            "op_text": texts["op"],
            "pc_text": texts["pc"],
            "explanation_text": texts["exp"],
            "pc_depth": rng.randint(1, 5),
            "created_utc": start + i * 37 * 86400,
        })
        for kind, toks in (("op", op), ("pc", pc), ("exp", exp)):
            docs.append({"doc_id": f"{tid}:{kind}", "tokens": toks})
    OUT.mkdir(parents=True, exist_ok=True)
    with open(OUT / "mini_triples.jsonl", "w") as f:
        for t in triples:
            f.write(json.dumps(t, ensure_ascii=False) + "\n")
    with open(OUT / "mini_exchange.jsonl", "w") as f:
        for d in docs:
            f.write(json.dumps(d, ensure_ascii=False) + "\n")


if __name__ == "__main__":
    main()
