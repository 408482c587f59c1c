#!/usr/bin/env python3
"""Generate the small POS-tagged kitchen-review corpus and toy lexicon in data/desk."""

import argparse
import random
from pathlib import Path

PRODUCTS = {
    "blender": ["motor", "jar", "blade", "lid", "base"],
    "toaster": ["slot", "dial", "lever", "tray", "timer"],
    "kettle": ["spout", "handle", "lid", "switch", "base"],
    "knife": ["blade", "handle", "edge", "tip", "sheath"],
    "skillet": ["coating", "handle", "surface", "rim", "bottom"],
    "mixer": ["bowl", "whisk", "motor", "stand", "speed"],
    "grinder": ["burr", "hopper", "motor", "lid", "setting"],
    "scale": ["display", "platform", "battery", "button", "unit"],
}

GOOD = ["great", "sturdy", "excellent", "reliable", "quiet", "sharp", "perfect", "solid", "sleek", "durable"]
BAD = ["cheap", "flimsy", "noisy", "poor", "terrible", "useless", "awful", "dull", "defective", "weak"]

# Tokens use {N} product, {P} part, {G} positive adjective, {B} negative adjective.
POSITIVE = [
    "The/DT {N}/NN works/VBZ great/JJ and/CC the/DT {P}/NN is/VBZ very/RB {G}/JJ ./.",
    "I/PRP love/VBP this/DT {N}/NN because/IN it/PRP is/VBZ {G}/JJ and/CC {G}/JJ ./.",
    "It/PRP was/VBD easy/JJ to/TO clean/VB the/DT {P}/NN after/IN each/DT use/NN ./.",
    "The/DT {P}/NN feels/VBZ {G}/JJ and/CC the/DT {N}/NN does/VBZ the/DT job/NN well/RB ./.",
    "We/PRP have/VBP used/VBN this/DT {G}/JJ {N}/NN every/DT day/NN for/IN a/DT year/NN ./.",
    "This/DT {G}/JJ {N}/NN is/VBZ worth/JJ every/DT penny/NN of/IN the/DT price/NN ./.",
    "I/PRP would/MD recommend/VB this/DT {N}/NN to/TO anyone/NN who/WP needs/VBZ a/DT {G}/JJ {P}/NN ./.",
    "The/DT {P}/NN is/VBZ {G}/JJ ,/, and/CC the/DT {N}/NN looks/VBZ {G}/JJ on/IN the/DT counter/NN ./.",
    "My/PRP$ wife/NN says/VBZ the/DT {N}/NN is/VBZ the/DT best/JJS we/PRP ever/RB owned/VBD ./.",
]

NEGATIVE = [
    "The/DT {P}/NN broke/VBD after/IN two/CD weeks/NNS of/IN light/JJ use/NN ./.",
    "The/DT {N}/NN is/VBZ {B}/JJ and/CC the/DT {P}/NN feels/VBZ {B}/JJ ./.",
    "I/PRP returned/VBD the/DT {N}/NN because/IN the/DT {P}/NN was/VBD {B}/JJ ./.",
    "Customer/NN service/NN would/MD not/RB replace/VB the/DT {B}/JJ {P}/NN on/IN my/PRP$ {N}/NN ./.",
    "Do/VB not/RB waste/VB your/PRP$ money/NN on/IN this/DT {B}/JJ {N}/NN ./.",
    "The/DT {N}/NN stopped/VBD working/VBG after/IN a/DT month/NN and/CC the/DT {P}/NN is/VBZ {B}/JJ ./.",
    "The/DT {P}/NN is/VBZ so/RB {B}/JJ that/IN I/PRP had/VBD to/TO throw/VB the/DT {N}/NN away/RB ./.",
    "I/PRP regret/VBP buying/VBG this/DT {B}/JJ {N}/NN ,/, the/DT {P}/NN failed/VBD quickly/RB ./.",
    "Sadly/RB the/DT {N}/NN arrived/VBD with/IN a/DT {B}/JJ {P}/NN and/CC a/DT cracked/JJ {P}/NN ./.",
]

NEUTRAL = [
    "I/PRP bought/VBD this/DT {N}/NN for/IN my/PRP$ kitchen/NN last/JJ month/NN ./.",
    "The/DT {N}/NN came/VBD in/IN a/DT small/JJ box/NN with/IN a/DT manual/NN ./.",
    "We/PRP use/VBP the/DT {N}/NN mostly/RB on/IN weekends/NNS ./.",
    "The/DT {P}/NN is/VBZ made/VBN of/IN plastic/NN and/CC steel/NN ./.",
]


def fill(template, rng, product, adjective_pool):
    part = rng.choice(PRODUCTS[product])
    out = []
    for tok in template.split():
        word, tag = tok.rsplit("/", 1)
        if word == "{N}":
            word = product
        elif word == "{P}":
            word = part
        elif word == "{G}":
            word = rng.choice(GOOD if adjective_pool == "good" else BAD)
        elif word == "{B}":
            word = rng.choice(BAD if adjective_pool == "bad" else GOOD)
        out.append(f"{word}/{tag}")
    out[0] = out[0][0].upper() + out[0][1:]
    return " ".join(out)


def generate(docs, seed):
    rng = random.Random(seed)
    lines = []
    products = sorted(PRODUCTS)
    for d in range(docs):
        product = products[d % len(products)]
        positive = rng.random() < 0.5
        own, other = (POSITIVE, NEGATIVE) if positive else (NEGATIVE, POSITIVE)
        pool = "good" if positive else "bad"
        for s in range(rng.randint(4, 8)):
            r = rng.random()
            if r < 0.75:
                sent = fill(rng.choice(own), rng, product, pool)
            elif r < 0.9:
                sent = fill(rng.choice(NEUTRAL), rng, product, pool)
            else:
                sent = fill(rng.choice(other), rng, product, "bad" if positive else "good")
            lines.append(f"{d}\t{s}\t{sent}")
        lines.append("")
    return "\n".join(lines)


def lexicon():
    pos = GOOD + ["love", "recommend", "best", "easy", "well", "worth"]
    neg = BAD + ["broke", "returned", "waste", "regret", "failed", "cracked", "stopped"]
    return "".join(f"{w}\tpositive\n" for w in pos) + "".join(f"{w}\tnegative\n" for w in neg)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "desk"))
    ap.add_argument("--docs", type=int, default=400)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "corpus.txt").write_text(generate(args.docs, args.seed) + "\n")
    (out / "lexicon.tsv").write_text(lexicon())


if __name__ == "__main__":
    main()
