"""Builds the 1,000-line legacy fixture and its expected Unicode text.

The expected text is assembled syllable by syllable in logical order (cluster,
then vowel sign), while the legacy bytes put pre-base vowels first, as the
font stores them. Nothing here parses legacy bytes, so the golden file does
not depend on the converter's algorithm.
"""
import random
import sys
import unicodedata
from pathlib import Path

HERE = Path(__file__).parent
TABLE = HERE.parent.parent / "data" / "smriti_sample.tsv"

ESC = {"\\s": " ", "\\t": "\t", "\\n": "\n", "\\r": "\r", "\\\\": "\\"}


def load():
    rules = {}
    for line in TABLE.read_text(encoding="utf-8").splitlines():
        if line.startswith("#") or not line.strip():
            continue
        pat, out, kind = line.split("\t")
        rules[bytes.fromhex(pat)] = (ESC.get(out, out), kind)
    return rules


def main():
    rules = load()
    by = lambda pred: [(p, o) for p, (o, k) in rules.items() if pred(p, o, k)]
    cat = lambda c: unicodedata.category(c)
    consonants = by(lambda p, o, k: k == "plain" and len(p) == 1 and cat(o[0]) == "Lo"
                    and "ক" <= o[0] <= "য়" and o != "ৎ")
    conjuncts = by(lambda p, o, k: k == "conjunct")
    prevowels = by(lambda p, o, k: k == "prevowel")
    postvowels = by(lambda p, o, k: k == "plain" and o in "াীুূৃ")
    signs = by(lambda p, o, k: o in "ংঃঁ")
    independents = by(lambda p, o, k: "অ" <= o <= "ঔ")
    digits = by(lambda p, o, k: "০" <= o <= "৯")
    punct = by(lambda p, o, k: o in ",.?!-'\"():;")
    virama = next(p for p, (o, k) in rules.items() if o == "্")
    length_mark = next(p for p, (o, k) in rules.items() if o == "ৗ")
    e_sign = next(p for p, (o, k) in rules.items() if o == "ে")
    danda = next(p for p, (o, k) in rules.items() if o == "।")

    rng = random.Random(20240601)

    def cluster():
        r = rng.random()
        if r < 0.15:
            return rng.choice(conjuncts)
        if r < 0.25:
            (p1, o1), (p2, o2) = rng.choice(consonants), rng.choice(consonants)
            return p1 + virama + p2, o1 + "্" + o2
        return rng.choice(consonants)

    def syllable():
        cp, co = cluster()
        r = rng.random()
        if r < 0.25:
            vp, vo = rng.choice(prevowels)
            b, u = vp + cp, co + vo
            if vp == e_sign and rng.random() < 0.2:
                b, u = b + length_mark, u + "ৗ"
        elif r < 0.55:
            vp, vo = rng.choice(postvowels)
            b, u = cp + vp, co + vo
        else:
            b, u = cp, co
        if rng.random() < 0.1:
            sp, so = rng.choice(signs)
            b, u = b + sp, u + so
        return b, u

    def word():
        if rng.random() < 0.05:
            parts = [rng.choice(digits) for _ in range(rng.randint(1, 4))]
        else:
            parts = [rng.choice(independents)] if rng.random() < 0.15 else []
            parts += [syllable() for _ in range(rng.randint(1, 4))]
        return b"".join(p for p, _ in parts), "".join(u for _, u in parts)

    legacy, golden = [], []
    for _ in range(1000):
        lb, lu = [], []
        for i in range(rng.randint(3, 12)):
            wb, wu = word()
            if i:
                lb.append(b" ")
                lu.append(" ")
            lb.append(wb)
            lu.append(wu)
            if rng.random() < 0.08:
                pb, pu = rng.choice(punct)
                lb.append(pb)
                lu.append(pu)
        lb.append(danda)
        lu.append("।")
        legacy.append(b"".join(lb))
        golden.append("".join(lu))

    (HERE / "legacy_1000.bin").write_bytes(b"\n".join(legacy) + b"\n")
    text = unicodedata.normalize("NFC", "\n".join(golden) + "\n")
    (HERE / "legacy_1000.golden.txt").write_bytes(text.encode("utf-8"))


if __name__ == "__main__":
    sys.exit(main())
