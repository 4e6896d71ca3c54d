"""Seeded synthetic data: random UI trees, clean documents, and flaw seeding.

Everything here is deterministic under a caller-supplied Random so test
corpora are reproducible. The flaw seeder plants known occlusions,
duplicates, and out-of-bound boxes into a clean document and reports exactly
what it planted.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from random import Random

from .dsl import Tag, WireframeDocument, WireframeElement
from .geometry import PixelBounds, Rect
from .hierarchy import UiNode, UiTree, normalize

SCREEN_W, SCREEN_H = 1440, 2560

_CLASS_POOL = [
    "TextView", "TextView", "Button", "ToggleButton", "ImageView", "ImageButton",
    "EditText", "CheckBox", "Switch", "RadioButton", "DatePicker", "Spinner",
    "VideoView", "LinearLayout", "FrameLayout", "RelativeLayout", "CustomWidget",
]
_CONTAINER_CLASSES = {"LinearLayout", "FrameLayout", "RelativeLayout", "CustomWidget"}

_WORDS = [
    "home", "profile", "sync", "offers", "recent", "saved", "map", "orders",
    "queue", "alerts", "share", "review", "track", "help", "theme", "status",
    "R&D", "<new>", 'say "hi"',
]


def _random_text(rng: Random, max_words: int = 6) -> str | None:
    if rng.random() < 0.35:
        return None
    count = rng.randint(1, max_words)
    return " ".join(rng.choice(_WORDS) for _ in range(count))


def _random_bounds(rng: Random) -> PixelBounds:
    left = rng.randint(0, SCREEN_W - 40)
    top = rng.randint(0, SCREEN_H - 40)
    width = rng.randint(20, min(1200, SCREEN_W - left))
    height = rng.randint(20, min(600, SCREEN_H - top))
    return PixelBounds(left, top, left + width, top + height)


def make_tree(rng: Random, max_nodes: int = 50) -> UiTree:
    """A random normalized UI tree with up to max_nodes nodes."""
    budget = rng.randint(1, max_nodes)
    counter = [0]

    def build(depth: int) -> UiNode:
        counter[0] += 1
        native = "FrameLayout" if counter[0] == 1 else rng.choice(_CLASS_POOL)
        is_container = native in _CONTAINER_CLASSES
        children: list[UiNode] = []
        if is_container and depth < 3:
            while counter[0] < budget and rng.random() < 0.6 and len(children) < 8:
                children.append(build(depth + 1))
        resource_id = None
        if rng.random() < 0.5:
            resource_id = f"com.example:id/{rng.choice(['row', 'item', 'panel', 'field'])}{rng.randint(0, 30)}"
        bounds = PixelBounds(0, 0, SCREEN_W, SCREEN_H) if counter[0] == 1 else _random_bounds(rng)
        return UiNode(
            native_class=native,
            bounds=bounds,
            resource_id=resource_id,
            text=_random_text(rng),
            content_desc=_random_text(rng, 3),
            clickable=rng.random() < 0.3,
            visible=True,
            children=tuple(children),
        )

    root = build(0)
    return normalize(UiTree(root=root, screen_width=SCREEN_W, screen_height=SCREEN_H))


_ROW_TAGS = [Tag.PARAGRAPH, Tag.BUTTON, Tag.TEXT_INPUT, Tag.IMAGE, Tag.CHECKBOX]


def make_clean_document(rng: Random, rows: int = 8) -> WireframeDocument:
    """A lint-clean grid document: non-overlapping, in-bounds elements."""
    elements = [
        WireframeElement(id="header_title", tag=Tag.PARAGRAPH, box=Rect(120, 96, 1200, 96),
                         text=f"Screen {rng.randint(1, 99)}"),
    ]
    y = 320
    for i in range(rows):
        # Even rows always carry text so any adjacent pair can occlude.
        tag = rng.choice(_ROW_TAGS[:3] if i % 2 == 0 else _ROW_TAGS)
        el = WireframeElement(id=f"row_{i + 1}", tag=tag, box=Rect(120, y, 1200, 160))
        if tag is Tag.IMAGE:
            el.alt_text = rng.choice(["preview", "navigate up", "search", "favourite", "artwork"])
        else:
            el.text = f"Row {i + 1} {rng.choice(['label', 'entry', 'item', 'action'])}"
        elements.append(el)
        y += 280
    return WireframeDocument(screen_width=SCREEN_W, screen_height=SCREEN_H, roots=elements)


@dataclass(frozen=True, slots=True)
class SeededFlaw:
    kind: str  # matches FlawKind values
    element_ids: tuple[str, ...]


def seed_flaws(
    doc: WireframeDocument,
    rng: Random,
    n_occlusion: int = 1,
    n_duplication: int = 1,
    n_out_of_bound: int = 1,
) -> tuple[WireframeDocument, list[SeededFlaw]]:
    """Plant known flaws into a copy of a clean grid document.

    Victim elements are distinct across flaws so each planted flaw stays
    independently detectable.
    """
    doc = copy.deepcopy(doc)
    rows = [el for el in doc.roots if el.id.startswith("row_")]
    needed = 2 * n_occlusion + n_duplication + n_out_of_bound
    if len(rows) < needed:
        raise ValueError(f"need at least {needed} rows, document has {len(rows)}")
    flaws: list[SeededFlaw] = []
    used: set[str] = set()

    # Occlusion: slide a row up onto the previous row's lower half.
    adjacent = list(range(1, len(rows)))
    rng.shuffle(adjacent)
    planted = 0
    for i in adjacent:
        if planted >= n_occlusion:
            break
        first, second = rows[i - 1], rows[i]
        if first.id in used or second.id in used:
            continue
        if not first.text and not second.text:
            continue
        overlap = rng.randint(40, 80)
        second.box = Rect(second.box.left, first.box.bottom - overlap, second.box.width, second.box.height)
        flaws.append(SeededFlaw("occlusion", (first.id, second.id)))
        used.update((first.id, second.id))
        planted += 1

    free = [r for r in rows if r.id not in used]
    rng.shuffle(free)

    for _ in range(n_duplication):
        victim = free.pop()
        used.add(victim.id)
        clone = copy.deepcopy(victim)
        clone.id = f"{victim.id}_dup"
        clone.box = victim.box.moved(rng.randint(0, 20), rng.randint(0, 20))
        doc.roots.insert(doc.roots.index(victim) + 1, clone)
        flaws.append(SeededFlaw("duplication", (victim.id, clone.id)))

    for _ in range(n_out_of_bound):
        victim = free.pop()
        used.add(victim.id)
        box = victim.box
        if rng.random() < 0.5:
            grow = (doc.screen_width - box.right) + rng.randint(40, 360)
            victim.box = Rect(box.left, box.top, box.width + grow, box.height)
        else:
            victim.box = Rect(box.left + (doc.screen_width - box.right) + rng.randint(40, 360),
                              box.top, box.width, box.height)
        flaws.append(SeededFlaw("out_of_bound", (victim.id,)))

    return doc, flaws
