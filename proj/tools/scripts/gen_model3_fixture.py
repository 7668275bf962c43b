#!/usr/bin/env python3
"""Regenerate tests/fixtures/model3: three transcripts, labels and a 3x768
embedding CSV standing in for sidecar output in Model-3 tests."""

import math
import pathlib

TEXTS = {
    "A01": "The boy is on the stool and the stool is falling.",
    "B02": "Um the water is there and she is there, the water.",
    "C03": "A mother dries dishes while the sink overflows onto the floor.",
}
LABELS = {"A01": "cn", "B02": "ad", "C03": "cn"}


def main():
    out = pathlib.Path(__file__).resolve().parents[2] / "tests" / "fixtures" / "model3"
    (out / "transcripts").mkdir(parents=True, exist_ok=True)
    for sid, text in TEXTS.items():
        (out / "transcripts" / f"{sid}.txt").write_text(text + "\n")
    with open(out / "labels.csv", "w", newline="\n") as f:
        f.write("id,label\n")
        for sid, lab in LABELS.items():
            f.write(f"{sid},{lab}\n")
    with open(out / "embeddings.csv", "w", newline="\n") as f:
        f.write("id," + ",".join(f"e{j}" for j in range(768)) + "\n")
        # Rows deliberately out of id order: the loader must align by id.
        for r, sid in enumerate(["C03", "A01", "B02"]):
            row = [round(0.25 * math.sin(0.37 * j + 1.3 * r), 6) for j in range(768)]
            f.write(sid + "," + ",".join(f"{v:g}" for v in row) + "\n")


if __name__ == "__main__":
    main()
