#!/usr/bin/env python3
"""Build a desk-scale fine-tuning corpus from synthetic screens.

Fabricates a screen index (categories x apps x screens) with matching
hierarchy JSON files, runs the app-disjoint diverse selection, and emits
train/holdout JSONL plus the fine-tune manifest. Useful for eyeballing
selection balance without the real dataset on disk.

Usage: python scripts/build_synthetic_corpus.py [--n 1000] [--seed 7] [--out out/corpus]
"""

from __future__ import annotations

import argparse
import json
from collections import Counter
from pathlib import Path
from random import Random

from wiregen.corpus import (
    CorpusConfig,
    ScreenIndexEntry,
    build_examples,
    emit_finetune_manifest,
    emit_jsonl,
    select_samples,
)
from wiregen.dsl import serialize
from wiregen.synth import make_clean_document

TOPICS = ["news", "music", "travel", "fitness", "finance", "social", "weather", "games"]


def fabricate(out: Path, categories: int, apps: int, screens: int, seed: int) -> list[ScreenIndexEntry]:
    rng = Random(seed)
    hierarchy_dir = out / "hierarchies"
    hierarchy_dir.mkdir(parents=True, exist_ok=True)
    entries = []
    for c in range(categories):
        for a in range(apps):
            for s in range(screens):
                sid = f"c{c:02d}a{a:02d}s{s:02d}"
                doc = make_clean_document(rng, rows=rng.randint(4, 8))
                # Reuse the markup grid as a plausible hierarchy source.
                payload = {
                    "class": "FrameLayout",
                    "bounds": [0, 0, doc.screen_width, doc.screen_height],
                    "children": [
                        {
                            "class": "TextView" if el.text else "ImageView",
                            "text": el.text,
                            "content-desc": el.alt_text,
                            "resource-id": f"app:id/{el.id}",
                            "bounds": [el.box.left, el.box.top, el.box.right, el.box.bottom],
                        }
                        for el in doc.walk()
                    ],
                }
                path = hierarchy_dir / f"{sid}.json"
                path.write_text(json.dumps(payload), encoding="utf-8")
                topic = TOPICS[c % len(TOPICS)]
                entries.append(
                    ScreenIndexEntry(
                        screen_id=sid,
                        app_id=f"app_{c:02d}_{a:02d}",
                        category=f"cat{c:02d}",
                        description=f"a {topic} screen with {len(doc.roots)} sections",
                        hierarchy_path=path,
                    )
                )
    return entries


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--categories", type=int, default=27)
    parser.add_argument("--apps", type=int, default=12)
    parser.add_argument("--screens", type=int, default=8)
    parser.add_argument("--out", type=Path, default=Path("out/corpus"))
    args = parser.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    index = fabricate(args.out, args.categories, args.apps, args.screens, args.seed)
    cfg = CorpusConfig(n_samples=args.n, seed=args.seed)
    selection = select_samples(index, cfg)
    print(f"index: {len(index)} screens; train: {len(selection.train)}, "
          f"holdout: {len(selection.holdout)}, shortfall: {selection.shortfall}")
    print("categories in train:", len({e.category for e in selection.train}))
    print("apps per category (train):",
          dict(sorted(Counter(e.category for e in selection.train).items())[:5]), "...")

    train = build_examples(selection.train, cfg, workers=8)
    holdout = build_examples(selection.holdout, cfg, workers=8)
    emit_jsonl(train.examples, args.out / "train.jsonl")
    emit_jsonl(holdout.examples, args.out / "holdout.jsonl")
    manifest = emit_finetune_manifest(args.out / "finetune_manifest.json")
    print(f"train.jsonl: {len(train.examples)} examples "
          f"(oversize: {len(train.skipped_oversize)}, failed: {len(train.failed)})")
    print(f"holdout.jsonl: {len(holdout.examples)} examples")
    print(f"manifest: {manifest}")


if __name__ == "__main__":
    main()
