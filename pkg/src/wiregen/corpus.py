"""Select diverse, leakage-free screen samples and emit fine-tuning JSONL.

Selection is app-disjoint: every app lands wholly in the training pool or
wholly in the holdout, so near-identical screens from one app can never leak
across the split. Diversity comes from round-robin interleaving over
categories and, within each category, over apps.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from random import Random
from typing import Iterable, Sequence

from .dsl import emit_dsl
from .errors import MalformedInput
from .hierarchy import DEFAULT_SCREEN_DIMS, normalize, parse_hierarchy

log = logging.getLogger(__name__)

FINETUNE_HYPERPARAMETERS = {"learning_rate": 0.1, "batch_size": 256, "epochs": 4}


@dataclass(frozen=True, slots=True)
class ScreenIndexEntry:
    screen_id: str
    app_id: str
    category: str
    description: str
    hierarchy_path: Path


@dataclass(frozen=True, slots=True)
class TrainingExample:
    prompt: str
    completion: str
    token_estimate: int


@dataclass(frozen=True, slots=True)
class CorpusConfig:
    n_samples: int = 1000
    seed: int = 0
    max_tokens: int = 4096
    holdout_apps_per_category: int = 2

    def __post_init__(self) -> None:
        if self.n_samples < 0:
            raise ValueError(f"n_samples must be >= 0, got {self.n_samples}")


@dataclass(slots=True)
class Selection:
    """Result of the train/holdout split.

    shortfall counts how many requested training samples could not be
    satisfied from the available pool (0 when the request was met).
    """

    train: list[ScreenIndexEntry]
    holdout: list[ScreenIndexEntry]
    shortfall: int = 0


def estimate_tokens(text: str) -> int:
    """Conservative backend-agnostic token estimate: ceil(chars / 4)."""
    return (len(text) + 3) // 4


def select_samples(index: Sequence[ScreenIndexEntry], cfg: CorpusConfig) -> Selection:
    """Split an index into a diverse training sample and an app-level holdout.

    For each category the configured number of apps is drawn at random into
    the holdout (all of their screens). Training screens are then taken
    round-robin over categories, and round-robin over apps within each
    category, until n_samples screens are collected or the pool runs dry.
    Deterministic for a fixed (index, cfg); no app appears in both sets.
    """
    rng = Random(cfg.seed)
    selectable = [e for e in index if e.description.strip()]

    by_category: dict[str, dict[str, list[ScreenIndexEntry]]] = {}
    for entry in selectable:
        by_category.setdefault(entry.category, {}).setdefault(entry.app_id, []).append(entry)

    categories = sorted(by_category)
    holdout: list[ScreenIndexEntry] = []
    train_pool: dict[str, list[list[ScreenIndexEntry]]] = {}
    for category in categories:
        apps = sorted(by_category[category])
        held = set(rng.sample(apps, min(cfg.holdout_apps_per_category, len(apps))))
        for app in apps:
            screens = sorted(by_category[category][app], key=lambda e: e.screen_id)
            if app in held:
                holdout.extend(screens)
            else:
                rng.shuffle(screens)
                train_pool.setdefault(category, []).append(screens)

    # Shuffle rotation orders once, then interleave deterministically.
    rotation = [c for c in categories if c in train_pool]
    rng.shuffle(rotation)
    for category in rotation:
        rng.shuffle(train_pool[category])

    train: list[ScreenIndexEntry] = []
    cursors = {c: 0 for c in rotation}
    while len(train) < cfg.n_samples and rotation:
        exhausted: list[str] = []
        for category in rotation:
            if len(train) >= cfg.n_samples:
                break
            apps = train_pool[category]
            took = False
            for _ in range(len(apps)):
                app_screens = apps[cursors[category] % len(apps)]
                cursors[category] += 1
                if app_screens:
                    train.append(app_screens.pop(0))
                    took = True
                    break
            if not took:
                exhausted.append(category)
        for category in exhausted:
            rotation.remove(category)

    shortfall = cfg.n_samples - len(train)
    if shortfall > 0:
        log.warning("only %d of %d requested samples available", len(train), cfg.n_samples)
    return Selection(train=train, holdout=holdout, shortfall=max(0, shortfall))


@dataclass(slots=True)
class BuildResult:
    examples: list[TrainingExample] = field(default_factory=list)
    skipped_oversize: list[str] = field(default_factory=list)
    failed: list[tuple[str, str]] = field(default_factory=list)


def _build_one(
    entry: ScreenIndexEntry, screen_dims: tuple[int, int]
) -> TrainingExample | MalformedInput | OSError:
    try:
        raw = Path(entry.hierarchy_path).read_text(encoding="utf-8")
        tree = normalize(parse_hierarchy(raw, screen_dims))
    except (MalformedInput, OSError) as exc:
        return exc
    completion = emit_dsl(tree)
    estimate = estimate_tokens(entry.description) + estimate_tokens(completion)
    return TrainingExample(prompt=entry.description, completion=completion, token_estimate=estimate)


def build_examples(
    samples: Iterable[ScreenIndexEntry],
    cfg: CorpusConfig,
    screen_dims: tuple[int, int] = DEFAULT_SCREEN_DIMS,
    workers: int = 1,
) -> BuildResult:
    """Convert selected screens to prompt/completion pairs.

    Per-screen failures are logged and skipped, never aborting the batch;
    examples whose token estimate exceeds cfg.max_tokens are skipped and
    counted. Output order follows input order regardless of worker count.
    """
    samples = list(samples)
    result = BuildResult()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            built = list(pool.map(lambda e: _build_one(e, screen_dims), samples))
    else:
        built = [_build_one(e, screen_dims) for e in samples]
    for entry, outcome in zip(samples, built):
        if isinstance(outcome, Exception):
            log.warning("skipping %s: %s", entry.screen_id, outcome)
            result.failed.append((entry.screen_id, str(outcome)))
        elif outcome.token_estimate > cfg.max_tokens:
            log.info("skipping %s: estimate %d > %d", entry.screen_id, outcome.token_estimate, cfg.max_tokens)
            result.skipped_oversize.append(entry.screen_id)
        else:
            result.examples.append(outcome)
    return result


def emit_jsonl(examples: Iterable[TrainingExample], path: str | Path) -> int:
    """Write one {"prompt", "completion"} JSON object per line; returns count."""
    path = Path(path)
    count = 0
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        for example in examples:
            fh.write(json.dumps({"prompt": example.prompt, "completion": example.completion}, ensure_ascii=False))
            fh.write("\n")
            count += 1
    return count


def read_jsonl(path: str | Path) -> list[TrainingExample]:
    """Read a prompt/completion JSONL file back into examples."""
    examples: list[TrainingExample] = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            prompt, completion = record["prompt"], record["completion"]
            examples.append(
                TrainingExample(
                    prompt=prompt,
                    completion=completion,
                    token_estimate=estimate_tokens(prompt) + estimate_tokens(completion),
                )
            )
    return examples


def emit_finetune_manifest(path: str | Path) -> dict:
    """Write the fine-tune job metadata manifest and return its payload."""
    payload = dict(FINETUNE_HYPERPARAMETERS)
    Path(path).write_text(json.dumps(payload) + "\n", encoding="utf-8")
    return payload


def load_index(descriptions_csv: str | Path, rico_dir: str | Path) -> list[ScreenIndexEntry]:
    """Load the screen index from a descriptions CSV.

    Schema: screen_id,app_id,category,description (header row required).
    Hierarchy files are expected at {rico_dir}/{screen_id}.json.
    """
    import csv

    rico_dir = Path(rico_dir)
    entries: list[ScreenIndexEntry] = []
    with Path(descriptions_csv).open("r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            entries.append(
                ScreenIndexEntry(
                    screen_id=row["screen_id"],
                    app_id=row["app_id"],
                    category=row["category"],
                    description=row.get("description", ""),
                    hierarchy_path=rico_dir / f"{row['screen_id']}.json",
                )
            )
    return entries
