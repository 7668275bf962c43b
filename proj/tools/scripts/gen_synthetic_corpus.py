#!/usr/bin/env python3
"""Regenerate data/synthetic: 40 picture-description transcripts with labels,
an 88-column eGeMAPS-named acoustic table and a 768-wide embedding table.

The corpus is fake. Controls draw from a wide vocabulary; the `ad` group
repeats itself, leans on pronouns and fillers, and has slightly shifted
acoustic and embedding values, so classifiers have something weak to find.
"""

import argparse
import pathlib
import random

F0 = "F0semitoneFrom27.5Hz_sma3nz"
PITCH_STATS = [
    "amean", "stddevNorm", "percentile20.0", "percentile50.0", "percentile80.0",
    "pctlrange0-2", "meanRisingSlope", "stddevRisingSlope", "meanFallingSlope",
    "stddevFallingSlope",
]


def egemaps_names():
    names = [f"{F0}_{s}" for s in PITCH_STATS]
    names += [f"loudness_sma3_{s}" for s in PITCH_STATS]
    pair = ("amean", "stddevNorm")
    names += [f"spectralFlux_sma3_{s}" for s in pair]
    for i in range(1, 5):
        names += [f"mfcc{i}_sma3_{s}" for s in pair]
    for lld in ["jitterLocal_sma3nz", "shimmerLocaldB_sma3nz", "HNRdBACF_sma3nz",
                "logRelF0-H1-H2_sma3nz", "logRelF0-H1-A3_sma3nz"]:
        names += [f"{lld}_{s}" for s in pair]
    for f in ("F1", "F2", "F3"):
        for lld in ("frequency", "bandwidth", "amplitudeLogRelF0"):
            names += [f"{f}{lld}_sma3nz_{s}" for s in pair]
    for lld in ["alphaRatioV", "hammarbergIndexV", "slopeV0-500", "slopeV500-1500",
                "spectralFluxV"]:
        names += [f"{lld}_sma3nz_{s}" for s in pair]
    for i in range(1, 5):
        names += [f"mfcc{i}V_sma3nz_{s}" for s in pair]
    names += [f"{lld}_sma3nz_amean" for lld in
              ["alphaRatioUV", "hammarbergIndexUV", "slopeUV0-500", "slopeUV500-1500",
               "spectralFluxUV"]]
    names += ["loudnessPeaksPerSec", "VoicedSegmentsPerSec", "MeanVoicedSegmentLengthSec",
              "StddevVoicedSegmentLengthSec", "MeanUnvoicedSegmentLength",
              "StddevUnvoicedSegmentLength", "equivalentSoundLevel_dBp"]
    assert len(names) == 88 and len(set(names)) == 88
    return names


SCENE = [
    "the boy is standing on a stool reaching for the cookie jar",
    "the stool is tipping over and he is about to fall",
    "his sister is reaching up and asking for a cookie",
    "the mother is drying a plate at the sink",
    "the water is overflowing from the sink onto the floor",
    "she does not notice the water spilling everywhere",
    "there are cups and a plate on the counter beside her",
    "outside the window you can see the garden and a path",
    "the curtains are open and the afternoon looks bright",
    "the girl has her finger to her lips telling him to be quiet",
    "the cupboard door is open above the counter",
    "a puddle is spreading across the kitchen tiles",
]
EXTRA = [
    "apparently", "meanwhile", "carefully", "dishes", "window", "reflection", "balance",
    "mischief", "counter", "overflow", "distracted", "neighbour", "lawn", "shrubs",
    "gesturing", "precarious", "kitchen", "scene", "children", "daydreaming",
]
FILLERS = ["um", "uh", "well", "you know", "and", "and then", "oh"]
VAGUE = [
    "the boy is there", "he is getting the thing", "she is doing that", "it is going",
    "they are up there", "the water is there", "she is there", "that thing is falling",
    "he is up there", "it is the thing",
]


def transcript(rng, impaired):
    parts = []
    if impaired:
        while sum(len(p.split()) for p in parts) < 60:
            pick = rng.random()
            if pick < 0.45:
                parts.append(rng.choice(VAGUE))
            elif pick < 0.75:
                parts.append(rng.choice(FILLERS))
            else:
                parts.append(rng.choice(SCENE[:5]))
    else:
        scenes = SCENE[:]
        rng.shuffle(scenes)
        for s in scenes[: rng.randint(6, 9)]:
            parts.append(s)
            if rng.random() < 0.5:
                parts.append(rng.choice(EXTRA))
    text = ". ".join(parts)
    return text[0].upper() + text[1:] + ".\n"


def fmt(x):
    return f"{x:.6g}"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parents[2] / "data" / "synthetic"))
    ap.add_argument("--seed", type=int, default=20240521)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    out = pathlib.Path(args.out)
    (out / "transcripts").mkdir(parents=True, exist_ok=True)

    ids = [f"S{i:03d}" for i in range(1, 41)]
    labels = ["ad" if i % 2 == 0 else "cn" for i in range(40)]

    with open(out / "labels.csv", "w", newline="\n") as f:
        f.write("id,label\n")
        for sid, lab in zip(ids, labels):
            f.write(f"{sid},{lab}\n")

    for sid, lab in zip(ids, labels):
        (out / "transcripts" / f"{sid}.txt").write_text(transcript(rng, lab == "ad"))

    names = egemaps_names()
    with open(out / "acoustic.csv", "w", newline="\n") as f:
        f.write("id," + ",".join(names) + "\n")
        for sid, lab in zip(ids, labels):
            shift = 0.6 if lab == "ad" else 0.0
            row = [rng.gauss(shift if j < 8 else 0.0, 1.0) for j in range(88)]
            f.write(sid + "," + ",".join(fmt(v) for v in row) + "\n")

    with open(out / "embeddings.csv", "w", newline="\n") as f:
        f.write("id," + ",".join(f"e{j}" for j in range(768)) + "\n")
        for sid, lab in zip(ids, labels):
            shift = 0.05 if lab == "ad" else -0.05
            row = [rng.gauss(shift if j < 32 else 0.0, 0.2) for j in range(768)]
            f.write(sid + "," + ",".join(fmt(v) for v in row) + "\n")


if __name__ == "__main__":
    main()
