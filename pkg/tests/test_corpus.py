from __future__ import annotations

import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wiregen.corpus import (
    BuildResult,
    CorpusConfig,
    ScreenIndexEntry,
    TrainingExample,
    build_examples,
    emit_finetune_manifest,
    emit_jsonl,
    estimate_tokens,
    load_index,
    read_jsonl,
    select_samples,
)
from wiregen.dsl import parse_dsl

HIERARCHY_JSON = json.dumps(
    {
        "class": "FrameLayout",
        "bounds": [0, 0, 1440, 2560],
        "children": [
            {"class": "TextView", "text": "Hello", "bounds": [0, 84, 1440, 252], "resource-id": "a:id/t"}
        ],
    }
)


def _entry(screen_id: str, app_id: str, category: str, path: Path, description: str = "a screen") -> ScreenIndexEntry:
    return ScreenIndexEntry(screen_id, app_id, category, description, path)


def _index(categories: int, apps: int, screens: int, path: Path) -> list[ScreenIndexEntry]:
    entries = []
    for c in range(categories):
        for a in range(apps):
            for s in range(screens):
                entries.append(
                    _entry(f"c{c}a{a}s{s}", f"app_{c}_{a}", f"cat{c}", path, f"screen {s} of app {a}")
                )
    return entries


# --- token estimation ---


def test_estimate_tokens_examples():
    assert estimate_tokens("") == 0
    assert estimate_tokens("12345678") == 2
    assert estimate_tokens("123") == 1


@given(st.text(max_size=300), st.text(max_size=300))
def test_estimate_tokens_subadditive(a, b):
    assert estimate_tokens(a + b) <= estimate_tokens(a) + estimate_tokens(b) + 1


@given(st.text(max_size=300), st.text(max_size=100))
def test_estimate_tokens_monotone(a, suffix):
    assert estimate_tokens(a + suffix) >= estimate_tokens(a)


# --- selection ---


def test_two_apps_one_category_split_is_forced(tmp_path):
    # With 2 apps and 1 holdout app, app-disjointness admits exactly one
    # split shape: train from one app, holdout from the other.
    index = [
        _entry("s1", "app_a", "tools", tmp_path / "x.json"),
        _entry("s2", "app_a", "tools", tmp_path / "x.json"),
        _entry("s3", "app_b", "tools", tmp_path / "x.json"),
        _entry("s4", "app_b", "tools", tmp_path / "x.json"),
    ]
    for seed in range(25):
        cfg = CorpusConfig(n_samples=2, seed=seed, holdout_apps_per_category=1)
        selection = select_samples(index, cfg)
        train_apps = {e.app_id for e in selection.train}
        holdout_apps = {e.app_id for e in selection.holdout}
        assert len(train_apps) == 1 and len(holdout_apps) == 1
        assert not train_apps & holdout_apps
        assert train_apps | holdout_apps == {"app_a", "app_b"}


def test_n_zero_train_empty_holdout_populated(tmp_path):
    index = _index(3, 4, 5, tmp_path / "x.json")
    selection = select_samples(index, CorpusConfig(n_samples=0, seed=1))
    assert selection.train == []
    assert selection.holdout
    assert selection.shortfall == 0


def test_app_disjointness_across_seeds(tmp_path):
    index = _index(4, 5, 6, tmp_path / "x.json")
    for seed in range(15):
        selection = select_samples(index, CorpusConfig(n_samples=40, seed=seed))
        train_apps = {e.app_id for e in selection.train}
        holdout_apps = {e.app_id for e in selection.holdout}
        assert not train_apps & holdout_apps


def test_every_category_with_remaining_apps_represented(tmp_path):
    index = _index(6, 4, 3, tmp_path / "x.json")
    selection = select_samples(index, CorpusConfig(n_samples=30, seed=3))
    assert {e.category for e in selection.train} == {f"cat{c}" for c in range(6)}


def test_selection_deterministic(tmp_path):
    index = _index(5, 4, 4, tmp_path / "x.json")
    cfg = CorpusConfig(n_samples=25, seed=11)
    first = select_samples(index, cfg)
    second = select_samples(index, cfg)
    assert [e.screen_id for e in first.train] == [e.screen_id for e in second.train]
    assert [e.screen_id for e in first.holdout] == [e.screen_id for e in second.holdout]


def test_shortfall_reported(tmp_path):
    index = _index(2, 3, 2, tmp_path / "x.json")  # 12 screens, 4 go to holdout
    selection = select_samples(index, CorpusConfig(n_samples=100, seed=0, holdout_apps_per_category=1))
    assert selection.shortfall == 100 - len(selection.train)
    assert selection.shortfall > 0


def test_entries_without_description_not_selectable(tmp_path):
    index = [
        _entry("s1", "a", "c", tmp_path / "x.json", description=""),
        _entry("s2", "b", "c", tmp_path / "x.json", description="fine"),
    ]
    selection = select_samples(index, CorpusConfig(n_samples=5, seed=0, holdout_apps_per_category=0))
    assert [e.screen_id for e in selection.train] == ["s2"]


def test_round_robin_interleaves_categories(tmp_path):
    index = _index(3, 2, 5, tmp_path / "x.json")
    selection = select_samples(index, CorpusConfig(n_samples=6, seed=2, holdout_apps_per_category=0))
    cats = [e.category for e in selection.train]
    assert sorted(set(cats[:3])) == ["cat0", "cat1", "cat2"]
    assert sorted(set(cats[3:6])) == ["cat0", "cat1", "cat2"]


# --- building ---


def test_build_examples_prompt_verbatim(tmp_path):
    screen = tmp_path / "s1.json"
    screen.write_text(HIERARCHY_JSON, encoding="utf-8")
    entry = _entry("s1", "app", "cat", screen, description="a settings page with toggles")
    result = build_examples([entry], CorpusConfig())
    assert len(result.examples) == 1
    example = result.examples[0]
    assert example.prompt == "a settings page with toggles"
    assert example.completion.endswith("</html>")
    parse_dsl(example.completion)


def test_build_examples_skips_oversized(tmp_path):
    screen = tmp_path / "s1.json"
    screen.write_text(HIERARCHY_JSON, encoding="utf-8")
    entry = _entry("s1", "app", "cat", screen)
    result = build_examples([entry], CorpusConfig(max_tokens=10))
    assert result.examples == []
    assert result.skipped_oversize == ["s1"]


def test_build_examples_empty_input():
    assert build_examples([], CorpusConfig()) == BuildResult()


def test_build_examples_skips_failures_without_aborting(tmp_path):
    good = tmp_path / "good.json"
    good.write_text(HIERARCHY_JSON, encoding="utf-8")
    bad = tmp_path / "bad.json"
    bad.write_text("{nope", encoding="utf-8")
    entries = [
        _entry("bad", "app", "cat", bad),
        _entry("good", "app", "cat", good),
        _entry("missing", "app", "cat", tmp_path / "absent.json"),
    ]
    result = build_examples(entries, CorpusConfig())
    assert [e.prompt for e in result.examples] == ["a screen"]
    assert [sid for sid, _ in result.failed] == ["bad", "missing"]


def test_build_examples_worker_fanout_keeps_order(tmp_path):
    screens = []
    for i in range(8):
        p = tmp_path / f"s{i}.json"
        p.write_text(HIERARCHY_JSON, encoding="utf-8")
        screens.append(_entry(f"s{i}", "app", "cat", p, description=f"screen number {i}"))
    serial = build_examples(screens, CorpusConfig(), workers=1)
    fanned = build_examples(screens, CorpusConfig(), workers=4)
    assert serial == fanned


# --- emission ---


def test_emit_jsonl_three_lines(tmp_path):
    out = tmp_path / "train.jsonl"
    examples = [TrainingExample(f"p{i}", f"c{i}</html>", 4) for i in range(3)]
    assert emit_jsonl(examples, out) == 3
    lines = out.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 3
    assert all(set(json.loads(line)) == {"prompt", "completion"} for line in lines)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.text(max_size=40), st.text(max_size=60)), max_size=6))
def test_jsonl_round_trip(tmp_path_factory, pairs):
    out = tmp_path_factory.mktemp("jsonl") / "x.jsonl"
    examples = [
        TrainingExample(p, c, estimate_tokens(p) + estimate_tokens(c)) for p, c in pairs
    ]
    emit_jsonl(examples, out)
    assert read_jsonl(out) == examples


def test_manifest_carries_pinned_hyperparameters(tmp_path):
    out = tmp_path / "ft.json"
    payload = emit_finetune_manifest(out)
    assert payload == {"learning_rate": 0.1, "batch_size": 256, "epochs": 4}
    assert json.loads(out.read_text(encoding="utf-8")) == payload


def test_load_index_reads_csv(tmp_path):
    csv_path = tmp_path / "desc.csv"
    csv_path.write_text(
        "screen_id,app_id,category,description\n"
        "s1,appA,tools,a tools page\n"
        "s2,appB,games,a games page\n",
        encoding="utf-8",
    )
    entries = load_index(csv_path, tmp_path)
    assert [e.screen_id for e in entries] == ["s1", "s2"]
    assert entries[0].hierarchy_path == tmp_path / "s1.json"
    assert entries[1].category == "games"


def test_corpus_config_rejects_negative_n():
    with pytest.raises(ValueError):
        CorpusConfig(n_samples=-1)
