#!/usr/bin/env python3
"""Regenerate the JSON pattern assets shipped with the package.

Assets are derived from the constructors in dpcolor.patterns, so this script
makes the shipped data reproducible.  Run from anywhere; writes into
src/dpcolor/assets/ next to this script's repository root.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from dpcolor.io import graph_to_dict  # noqa: E402
from dpcolor.patterns import butterfly_pattern, c7_pattern, catalog  # noqa: E402


def main() -> None:
    assets = Path(__file__).resolve().parents[1] / "src" / "dpcolor" / "assets"
    assets.mkdir(exist_ok=True)
    entries = {"butterfly.json": butterfly_pattern(), "c7.json": c7_pattern()}
    for code, pat in catalog().items():
        entries[f"cluster_{code:02d}.json"] = pat
    for fname, pat in entries.items():
        data = graph_to_dict(
            pat.plane,
            {"name": pat.name, "code": pat.code,
             "labels": {lbl: v for lbl, v in sorted(pat.labels.items())}},
        )
        with open(assets / fname, "w") as fh:
            json.dump(data, fh, indent=1)
            fh.write("\n")
        print("wrote", assets / fname)


if __name__ == "__main__":
    main()
