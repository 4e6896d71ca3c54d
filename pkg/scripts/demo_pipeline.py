#!/usr/bin/env python3
"""Run the full offline pipeline for a handful of prompts.

Writes raw markup, beautified markup, the beautify report, and the rendered
SVG for each prompt under out/demo/. Everything uses the mock backend, so
the script runs with no network and is reproducible for a fixed seed.

Usage: python scripts/demo_pipeline.py [--seed 7] [--out out/demo]
"""

from __future__ import annotations

import argparse
import json
from pathlib import Path

from wiregen.beautify import beautify
from wiregen.dsl import parse_dsl, serialize
from wiregen.generation import GenerationConfig, assemble_prompt, generate
from wiregen.render import render_svg

PROMPTS = [
    "a login page",
    "a search page for apartments",
    "a settings page",
    "a music library with genres",
    "a flight booking form",
    "an unrecognized kind of screen",
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--out", type=Path, default=Path("out/demo"))
    args = parser.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    cfg = GenerationConfig(seed=args.seed)
    for i, description in enumerate(PROMPTS):
        stem = args.out / f"{i:02d}_{description.split()[1]}"
        raw = generate(assemble_prompt(description, cfg), cfg)
        document, report = beautify(parse_dsl(raw))
        stem.with_suffix(".raw.html").write_text(raw, encoding="utf-8")
        stem.with_suffix(".html").write_text(serialize(document), encoding="utf-8")
        stem.with_suffix(".svg").write_text(render_svg(document), encoding="utf-8")
        stem.with_suffix(".report.json").write_text(
            json.dumps(report.to_dict(), indent=2), encoding="utf-8"
        )
        print(
            f"{description!r}: {document.element_count()} elements, "
            f"{len(report.icons_resolved)} icons, "
            f"{len(report.findings_fixed)} flaws fixed -> {stem}.svg"
        )


if __name__ == "__main__":
    main()
