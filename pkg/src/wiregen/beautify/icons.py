"""Resolve alt-text descriptions to semantic icons.

The lexicon ships as a versioned data file with ten icon rows, each carrying
the phrases that commonly describe it. The default resolver is purely
lexical and deterministic; an optional backend-delegated mode asks a
completion endpoint to pick the icon number instead.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Sequence

_WORD_BREAKS = re.compile(r"[-_/]+")
_NON_WORD = re.compile(r"[^a-z0-9 ]+")

_ORDINALS = {
    "first": 1, "second": 2, "third": 3, "fourth": 4, "fifth": 5,
    "sixth": 6, "seventh": 7, "eighth": 8, "ninth": 9, "tenth": 10,
}


@dataclass(frozen=True, slots=True)
class IconEntry:
    icon_id: int
    glyph: str
    semantics: tuple[str, ...]


def normalize_phrase(text: str) -> str:
    """Lowercase, fold hyphen/underscore/slash to spaces, strip punctuation."""
    lowered = _WORD_BREAKS.sub(" ", text.lower())
    return " ".join(_NON_WORD.sub(" ", lowered).split())


@lru_cache(maxsize=1)
def load_lexicon() -> tuple[IconEntry, ...]:
    payload = json.loads(
        resources.files("wiregen.resources").joinpath("icon_lexicon.json").read_text("utf-8")
    )
    entries = tuple(
        IconEntry(
            icon_id=row["icon_id"],
            glyph=row["glyph"],
            semantics=tuple(normalize_phrase(p) for p in row["semantics"]),
        )
        for row in payload["entries"]
    )
    if len(entries) != 10:
        raise ValueError(f"icon lexicon must have 10 entries, found {len(entries)}")
    return entries


def glyph_for(icon_id: int, lexicon: Sequence[IconEntry] | None = None) -> str | None:
    for entry in lexicon or load_lexicon():
        if entry.icon_id == icon_id:
            return entry.glyph
    return None


def resolve_icon(alt_text: str, lexicon: Sequence[IconEntry] | None = None) -> int | None:
    """Map an alt-text description to an icon id, or None when unrelated.

    Whole-phrase matches win outright; otherwise rows are scored by how many
    of the description's words appear in their phrase vocabulary. Ties break
    toward the lower icon id, and a zero score resolves to None.
    """
    lexicon = lexicon or load_lexicon()
    norm = normalize_phrase(alt_text)
    if not norm:
        return None

    exact = [e.icon_id for e in lexicon if norm in e.semantics]
    if exact:
        return min(exact)

    words = set(norm.split())
    best_id: int | None = None
    best_score = 0
    for entry in lexicon:
        vocabulary = set()
        for phrase in entry.semantics:
            vocabulary.update(phrase.split())
        score = len(words & vocabulary)
        if score > best_score or (score == best_score and score > 0 and (best_id is None or entry.icon_id < best_id)):
            best_score = score
            best_id = entry.icon_id
    return best_id if best_score > 0 else None


def icon_category_prompt(lexicon: Sequence[IconEntry] | None = None) -> str:
    """The context prompt describing the icon category to a completion model."""
    lexicon = lexicon or load_lexicon()
    parts = []
    for index, entry in enumerate(lexicon, start=1):
        ordinal = {v: k for k, v in _ORDINALS.items()}[index]
        parts.append(f"the {ordinal} icon can be assigned an alternative description of {', '.join(entry.semantics)}")
    return "Here is an icon semantic category: " + "; ".join(parts) + "."


def icon_query_prompt(alt_text: str) -> str:
    return (
        f'Please indicate the icon number if there is a corresponding icon for the '
        f'alternative description of "{alt_text}". If there is no related icon, '
        f"please respond with no."
    )


def parse_icon_reply(reply: str) -> int | None:
    """Parse an ordinal, a digit, or a 'no' answer from a model reply."""
    lowered = reply.lower()
    for word, value in _ORDINALS.items():
        if word in lowered:
            return value
    match = re.search(r"\b(10|[1-9])\b", lowered)
    if match:
        return int(match.group(1))
    if re.search(r"\bno\b", lowered):
        return None
    return None


def resolve_icon_via_backend(alt_text: str, cfg, backend=None) -> int | None:
    """Delegate icon selection to a completion backend.

    Sends the category context followed by the per-description query and
    parses the numeric or negative reply. Backend errors propagate.
    """
    from ..generation import make_backend

    backend = backend or make_backend(cfg)
    prompt = icon_category_prompt() + "\n" + icon_query_prompt(alt_text)
    reply = backend.complete(prompt, cfg)
    return parse_icon_reply(reply)
