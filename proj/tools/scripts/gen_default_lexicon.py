#!/usr/bin/env python3
"""Regenerate core/data/default_lexicon.tsv.

Takes the most frequent English words (wordfreq ranking) that appear in the
Brill tagger lexicon (MIT licence, as shipped in the TextBlob wheel) and maps
each word's most likely Penn Treebank tag onto the coarse six-tag scheme.

usage: gen_default_lexicon.py <path/to/en-lexicon.txt> <out.tsv> [count]
"""
import re
import sys

from wordfreq import top_n_list

COARSE = [
    (("VB", "MD"), "verb"),
    (("NN",), "noun"),
    (("PRP", "WP"), "pronoun"),
    (("RB", "WRB"), "adverb"),
    (("JJ",), "adjective"),
]

PRONOUNS = """i me my mine myself you your yours yourself yourselves he him his
himself she her hers herself it its itself we us our ours ourselves they them
their theirs themselves who whom whose what which that this these those
someone somebody something anyone anybody anything everyone everybody
everything nobody nothing one oneself""".split()

CONTRACTIONS = {
    "don't": "verb", "doesn't": "verb", "didn't": "verb", "can't": "verb",
    "couldn't": "verb", "won't": "verb", "wouldn't": "verb", "isn't": "verb",
    "aren't": "verb", "wasn't": "verb", "weren't": "verb", "haven't": "verb",
    "hasn't": "verb", "hadn't": "verb", "shouldn't": "verb", "i'm": "pronoun",
    "i've": "pronoun", "i'll": "pronoun", "i'd": "pronoun", "you're": "pronoun",
    "you've": "pronoun", "he's": "pronoun", "she's": "pronoun", "it's": "pronoun",
    "we're": "pronoun", "we've": "pronoun", "they're": "pronoun",
    "they've": "pronoun", "that's": "pronoun", "there's": "adverb",
    "what's": "pronoun", "let's": "verb",
}


def coarse(penn):
    for prefixes, tag in COARSE:
        if penn.startswith(prefixes):
            return tag
    return "other"


def main():
    lexicon_path, out_path = sys.argv[1], sys.argv[2]
    count = int(sys.argv[3]) if len(sys.argv) > 3 else 5000
    brill = {}
    with open(lexicon_path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith(";;;") or not line.strip():
                continue
            word, *tags = line.split()
            if word.islower() and re.fullmatch(r"[a-z]+", word):
                brill.setdefault(word, tags[0])

    entries = {}
    for w in PRONOUNS:
        entries[w] = "pronoun"
    entries.update(CONTRACTIONS)
    for word in top_n_list("en", 200000):
        if len(entries) >= count:
            break
        if word in entries or word not in brill:
            continue
        entries[word] = coarse(brill[word])

    with open(out_path, "w", encoding="utf-8", newline="\n") as out:
        out.write("# Default coarse POS lexicon: word<TAB>tag\n")
        out.write("# Tags from the Brill tagger lexicon (MIT licence, Copyright 1993 MIT and\n")
        out.write("# University of Pennsylvania), most likely tag per word, top words by\n")
        out.write("# frequency. Regenerate with tools/scripts/gen_default_lexicon.py.\n")
        for word in sorted(entries):
            out.write(f"{word}\t{entries[word]}\n")


if __name__ == "__main__":
    main()
