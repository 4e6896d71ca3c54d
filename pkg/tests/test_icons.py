from __future__ import annotations

from random import Random

import pytest

from wiregen.beautify.icons import (
    icon_category_prompt,
    icon_query_prompt,
    load_lexicon,
    normalize_phrase,
    parse_icon_reply,
    resolve_icon,
    resolve_icon_via_backend,
)
from wiregen.generation import GenerationConfig


def test_lexicon_has_ten_rows_with_expected_glyphs():
    lexicon = load_lexicon()
    assert [e.icon_id for e in lexicon] == list(range(1, 11))
    assert [e.glyph for e in lexicon] == [
        "back_arrow", "hamburger_menu", "gear", "three_dots", "info",
        "person", "close", "magnifier", "share", "heart",
    ]


def test_more_options_resolves_to_fourth_icon():
    assert resolve_icon("more options") == 4


def test_navigate_up_resolves_to_back_arrow():
    assert resolve_icon("navigate up") == 1


def test_unrelated_phrase_resolves_to_none():
    assert resolve_icon("purple elephant") is None


def test_every_lexicon_phrase_resolves_to_its_own_row():
    for entry in load_lexicon():
        for phrase in entry.semantics:
            assert resolve_icon(phrase) == entry.icon_id, phrase


def test_overlap_scoring_beats_nothing():
    # "tap to navigate up" is not a whole phrase but overlaps the first row.
    assert resolve_icon("tap to navigate up") == 1


def test_ties_break_to_lower_icon_id():
    # one word from row 1 ("back") and one from row 7 ("exit"): tie -> row 1
    assert resolve_icon("back exit") == 1


def test_case_and_punctuation_insensitive():
    assert resolve_icon("  More, OPTIONS! ") == 4
    assert resolve_icon("Switch-Off") == 7


def test_resolution_stable_under_lexicon_permutation():
    lexicon = list(load_lexicon())
    probes = ["more options", "navigate up", "share button", "user avatar", "find", "nothing relevant"]
    expected = [resolve_icon(p, lexicon) for p in probes]
    rng = Random(3)
    for _ in range(10):
        shuffled = lexicon[:]
        rng.shuffle(shuffled)
        assert [resolve_icon(p, shuffled) for p in probes] == expected


def test_normalize_phrase():
    assert normalize_phrase("Arrow-Back!") == "arrow back"
    assert normalize_phrase("  SEARCH/engine ") == "search engine"


@pytest.mark.parametrize(
    "reply,expected",
    [
        ("fourth", 4),
        ("the fourth icon", 4),
        ("4", 4),
        ("icon 10", 10),
        ("no", None),
        ("There is no related icon.", None),
        ("tenth", 10),
        ("", None),
    ],
)
def test_parse_icon_reply(reply, expected):
    assert parse_icon_reply(reply) == expected


def test_prompts_carry_category_and_question():
    context = icon_category_prompt()
    assert context.startswith("Here is an icon semantic category:")
    assert "first icon can be assigned an alternative description of return, back, navigate up" in context
    query = icon_query_prompt("more options")
    assert '"more options"' in query
    assert query.endswith("please respond with no.")


class _ScriptedBackend:
    def __init__(self, reply: str):
        self.reply = reply
        self.prompts: list[str] = []

    def complete(self, prompt: str, cfg) -> str:
        self.prompts.append(prompt)
        return self.reply


def test_backend_delegated_resolution():
    backend = _ScriptedBackend("fourth")
    cfg = GenerationConfig()
    assert resolve_icon_via_backend("more options", cfg, backend) == 4
    assert "more options" in backend.prompts[0]
    backend = _ScriptedBackend("no")
    assert resolve_icon_via_backend("gibberish", cfg, backend) is None
