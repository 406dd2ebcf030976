#!/usr/bin/env python3
"""Generate the bundled corpora and annotation fixtures.

Outputs (relative to the repository root):
  data/synthetic_corpus.tsv        60 code-mixed posts, token-annotated
  data/synthetic_corpus.manifest   post count and label histogram
  tests/data/agreement_882.tsv  882 annotation pairs with the agreement
                                     grid [[200,146,13],[46,268,26],[6,80,97]]
  tests/data/perfect_annotations.tsv
  tests/data/toy_cbw.tsv           36 posts whose only signal is colloquial
                                   Bengali sentiment words

Everything is seeded, so reruns reproduce the files byte for byte.
"""

import pathlib
import random

ROOT = pathlib.Path(__file__).resolve().parent.parent

EN_FILLER = [
    ("today", "NN"), ("match", "NN"), ("the", "DT"), ("is", "VBZ"), ("was", "VBD"),
    ("going", "VBG"), ("to", "TO"), ("college", "NN"), ("exam", "NN"), ("class", "NN"),
    ("we", "PRP"), ("watch", "VB"), ("movie", "NN"), ("news", "NN"), ("train", "NN"),
    ("after", "IN"), ("this", "DT"), ("team", "NN"), ("song", "NN"), ("food", "NN"),
    ("weekend", "NN"), ("new", "JJ"), ("just", "RB"), ("now", "RB"), ("with", "IN"),
]
BN_FILLER = [
    ("ami", "PRP"), ("tumi", "PRP"), ("aj", "NN"), ("kal", "NN"), ("jabo", "VB"),
    ("ki", "WP"), ("korchis", "VB"), ("bari", "NN"), ("khabar", "NN"), ("ta", "DT"),
    ("ekta", "DT"), ("kotha", "NN"), ("bolchi", "VB"), ("ache", "VB"), ("chilo", "VB"),
    ("hobe", "VB"), ("niye", "IN"), ("sathe", "IN"), ("amar", "PRP"), ("khela", "NN"),
]
HI_FILLER = [("kya", "WP"), ("hai", "VBZ"), ("yaar", "NN"), ("bhai", "NN")]
UNIV = [("Kolkata", "NNP"), ("Facebook", "NNP"), ("Sachin", "NNP"), ("IPL", "NNP"),
        ("2016", "CD")]

POS_WORDS = [
    ("good", "En", "JJ"), ("great", "En", "JJ"), ("awesome", "En", "JJ"), ("nice", "En", "JJ"),
    ("beautiful", "En", "JJ"), ("lovely", "En", "JJ"), ("amazing", "En", "JJ"),
    ("love", "En", "VB"), ("enjoyed", "En", "VBD"), ("bhalo", "Bn", "JJ"),
    ("darun", "Bn", "JJ"), ("fatafati", "Bn", "JJ"), ("hebby", "Bn", "JJ"),
    ("sundor", "Bn", "JJ"), ("jhakkas", "Bn", "JJ"), ("gr8", "En", "JJ"), ("gud", "En", "JJ"),
]
NEG_WORDS = [
    ("bad", "En", "JJ"), ("worst", "En", "JJ"), ("boring", "En", "JJ"), ("terrible", "En", "JJ"),
    ("stupid", "En", "JJ"), ("hate", "En", "VB"), ("useless", "En", "JJ"),
    ("kharap", "Bn", "JJ"), ("faltu", "Bn", "JJ"), ("jata", "Bn", "JJ"), ("bekar", "Bn", "JJ"),
    ("bajey", "Bn", "JJ"), ("dukkho", "Bn", "NN"),
]
INTENSIFIERS = [("khub", "Bn", "RB"), ("very", "En", "RB"), ("so", "En", "RB"),
                ("really", "En", "RB")]
CURSES = [("shit", "En", "NN"), ("@ss", "En", "NN"), ("damn", "En", "UH")]
POS_SMILEYS = [":)", ":D", "<3", ":-)"]
NEG_SMILEYS = [":(", ":'(", "-_-", ":/"]
ABBREVS = [("btw", "En", "RB"), ("plz", "En", "UH"), ("u", "En", "PRP")]


def elongate(text, rng):
    i = rng.randrange(len(text))
    if not text[i].isalpha():
        return text
    return text[:i] + text[i] * rng.randint(3, 5) + text[i + 1:]


def filler(rng, matrix, n):
    out = []
    for _ in range(n):
        r = rng.random()
        if r < 0.08:
            w, p = rng.choice(UNIV)
            out.append((w, "Univ", p))
        elif r < 0.12:
            w, p = rng.choice(HI_FILLER)
            out.append((w, "Hi", p))
        else:
            use_matrix = rng.random() < 0.7
            lang = matrix if use_matrix else ("Bn" if matrix == "En" else "En")
            pool = EN_FILLER if lang == "En" else BN_FILLER
            w, p = rng.choice(pool)
            out.append((w, lang, p))
    return out


def make_post(label, rng):
    matrix = rng.choice(["En", "Bn"])
    tokens = filler(rng, matrix, rng.randint(3, 7))
    extras = []
    if label == "pos":
        if rng.random() > 0.1:
            for _ in range(rng.randint(1, 2)):
                extras.append(rng.choice(POS_WORDS))
            if rng.random() < 0.35:
                extras.insert(0, rng.choice(INTENSIFIERS))
        if rng.random() < 0.3:
            extras.append((rng.choice(POS_SMILEYS), "Univ", "SYM"))
    elif label == "neg":
        if rng.random() > 0.1:
            for _ in range(rng.randint(1, 2)):
                extras.append(rng.choice(NEG_WORDS))
            if rng.random() < 0.3:
                extras.insert(0, rng.choice(INTENSIFIERS))
        if rng.random() < 0.25:
            extras.append((rng.choice(NEG_SMILEYS), "Univ", "SYM"))
        if rng.random() < 0.15:
            extras.append(rng.choice(CURSES))
    else:
        tokens += filler(rng, matrix, rng.randint(1, 3))
        if rng.random() < 0.15:
            extras.append(rng.choice(POS_WORDS + NEG_WORDS))
    if rng.random() < 0.2:
        extras.append(rng.choice(ABBREVS))
    # Keep multiword sentiment phrases contiguous.
    pos = rng.randint(0, len(tokens))
    tokens[pos:pos] = extras

    rendered = []
    for text, lang, tag in tokens:
        if lang != "Univ" and tag in ("JJ", "VB") and rng.random() < 0.15:
            text = elongate(text, rng)
        if label != "neu" and tag == "JJ" and rng.random() < 0.1:
            text = text.upper()
        rendered.append((text, lang, tag))
    if label == "pos" and rng.random() < 0.35:
        t, l, p = rendered[-1]
        rendered[-1] = (t + "!" * rng.randint(1, 3), l, p)
    if label == "neg" and rng.random() < 0.3:
        t, l, p = rendered[-1]
        rendered[-1] = (t + rng.choice(["!", "??", "?!"]), l, p)
    if label == "neu" and rng.random() < 0.25:
        t, l, p = rendered[-1]
        rendered[-1] = (t + "?", l, p)
    return rendered


def render(pid, label, tokens):
    return f"{pid}\t{label}\t" + " ".join(f"{t}/{l}/{p}" for t, l, p in tokens)


def synthetic_corpus():
    rng = random.Random(2017)
    labels = ["pos"] * 18 + ["neu"] * 26 + ["neg"] * 16
    rng.shuffle(labels)
    lines = ["# Synthetic code-mixed (English/Bengali/Hindi) posts for tests and demos."]
    for i, label in enumerate(labels, 1):
        lines.append(render(f"s{i:03d}", label, make_post(label, rng)))
    (ROOT / "data").mkdir(exist_ok=True)
    (ROOT / "data/synthetic_corpus.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    manifest = ["# posts and label histogram of synthetic_corpus.tsv",
                f"posts\t{len(labels)}"]
    for code in ("pos", "neu", "neg"):
        manifest.append(f"{code}\t{labels.count(code)}")
    (ROOT / "data/synthetic_corpus.manifest").write_text("\n".join(manifest) + "\n",
                                                         encoding="utf-8")


def annotations():
    grid = [[200, 146, 13], [46, 268, 26], [6, 80, 97]]
    codes = ["pos", "neu", "neg"]
    pairs = []
    for i, row in enumerate(grid):
        for j, n in enumerate(row):
            pairs += [(codes[i], codes[j])] * n
    random.Random(882).shuffle(pairs)
    out = ["# 882 annotation pairs: post id, annotator 1, annotator 2"]
    out += [f"t{k:04d}\t{a}\t{b}" for k, (a, b) in enumerate(pairs, 1)]
    data = ROOT / "tests/data"
    data.mkdir(parents=True, exist_ok=True)
    (data / "agreement_882.tsv").write_text("\n".join(out) + "\n", encoding="utf-8")

    perfect = ["# both annotators agree on every post"]
    for k, code in enumerate(["pos", "neu", "neg"] * 5, 1):
        perfect.append(f"p{k:02d}\t{code}\t{code}")
    (data / "perfect_annotations.tsv").write_text("\n".join(perfect) + "\n", encoding="utf-8")


def toy_cbw():
    rng = random.Random(36)
    fill = ["ami", "tumi", "aj", "kal", "bari", "khabar", "kotha", "ache", "chilo", "hobe",
            "niye", "sathe", "ekta", "jabo", "amar", "khela"]
    pos = ["hebby", "fatafati", "jhakkas"]
    neg = ["jata", "faltu", "bekar"]
    # First 25 posts form the default training split: Neutral is the clear
    # majority there, and the remaining 11 contain every class.
    train = ["neu"] * 10 + ["pos"] * 8 + ["neg"] * 7
    test = ["neu"] * 4 + ["pos"] * 3 + ["neg"] * 4
    rng.shuffle(train)
    rng.shuffle(test)
    labels = train + test
    lines = ["# Toy corpus: colloquial Bengali sentiment words are the only signal."]
    for i, label in enumerate(labels, 1):
        words = [rng.choice(fill) for _ in range(4)]
        if label == "pos":
            words.insert(rng.randint(0, 4), rng.choice(pos))
        elif label == "neg":
            words.insert(rng.randint(0, 4), rng.choice(neg))
        else:
            words.append(rng.choice(fill))
        lines.append(render(f"c{i:02d}", label, [(w, "Bn", "NN") for w in words]))
    (ROOT / "tests/data/toy_cbw.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")


if __name__ == "__main__":
    synthetic_corpus()
    annotations()
    toy_cbw()
