"""Ingest Rico-format view-hierarchy JSON into a normalized UI tree.

Both entry points are pure: `parse_hierarchy` maps the raw JSON onto
immutable `UiNode`/`UiTree` values without touching geometry, and
`normalize` produces the cleaned tree that downstream markup emission
expects (visible nodes only, clamped bounds, stable unique ids).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Any, Iterator

from .errors import MalformedInput
from .geometry import PixelBounds

DEFAULT_SCREEN_DIMS = (1440, 2560)

_ID_SAFE = frozenset("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-")


@dataclass(frozen=True, slots=True)
class UiNode:
    """One native view-hierarchy element."""

    native_class: str
    bounds: PixelBounds
    resource_id: str | None = None
    text: str | None = None
    content_desc: str | None = None
    clickable: bool = False
    visible: bool = True
    children: tuple["UiNode", ...] = ()

    def walk(self) -> Iterator["UiNode"]:
        """Depth-first preorder over this node and its descendants."""
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True, slots=True)
class UiTree:
    """A whole screen: the root element plus screen-level metadata."""

    root: UiNode
    screen_width: int
    screen_height: int
    app_id: str = ""
    category: str = ""
    description: str | None = None

    def walk(self) -> Iterator[UiNode]:
        return self.root.walk()

    def node_count(self) -> int:
        return sum(1 for _ in self.walk())


def _as_optional_text(value: Any) -> str | None:
    # content-desc is list-valued in many Rico files; take the first string.
    if isinstance(value, list):
        for item in value:
            if isinstance(item, str) and item:
                return item
        return None
    if isinstance(value, str) and value != "":
        return value
    return None


def _parse_bounds(value: Any) -> PixelBounds:
    if (
        not isinstance(value, list)
        or len(value) != 4
        or any(isinstance(v, bool) or not isinstance(v, int) for v in value)
    ):
        raise MalformedInput(f"bounds must be 4 integers, got {value!r}")
    return PixelBounds(*value)


def _strip_resource_id(value: Any) -> str | None:
    # Rico ids look like "com.app:id/login_button"; keep the final segment.
    if not isinstance(value, str) or not value:
        return None
    tail = value.rsplit("/", 1)[-1]
    return tail or None


def _parse_node(obj: Any) -> UiNode:
    if not isinstance(obj, dict):
        raise MalformedInput(f"node is not an object: {type(obj).__name__}")
    raw_children = obj.get("children", [])
    if raw_children is None:
        raw_children = []
    if not isinstance(raw_children, list):
        raise MalformedInput("children is not a list")
    children = tuple(_parse_node(c) for c in raw_children if c is not None)
    native_class = obj.get("class")
    return UiNode(
        native_class=native_class if isinstance(native_class, str) else "",
        bounds=_parse_bounds(obj.get("bounds")),
        resource_id=_strip_resource_id(obj.get("resource-id")),
        text=_as_optional_text(obj.get("text")),
        content_desc=_as_optional_text(obj.get("content-desc")),
        clickable=bool(obj.get("clickable", False)),
        visible=bool(obj.get("visible-to-user", True)),
        children=children,
    )


def _find_root(payload: Any) -> Any:
    # Rico ships both bare node objects and {"activity": {"root": ...}} wrappers.
    if not isinstance(payload, dict):
        raise MalformedInput("document has no root object")
    activity = payload.get("activity")
    if isinstance(activity, dict) and isinstance(activity.get("root"), dict):
        return activity["root"]
    if isinstance(payload.get("root"), dict):
        return payload["root"]
    if "bounds" in payload or "class" in payload or "children" in payload:
        return payload
    raise MalformedInput("document has no root node")


def parse_hierarchy(raw: str, screen_dims: tuple[int, int] = DEFAULT_SCREEN_DIMS) -> UiTree:
    """Parse one screen's view-hierarchy JSON text.

    Raises MalformedInput when the text is not JSON, carries no root node, or
    any node's bounds are not four integers. Missing optional fields become
    None; child order is preserved as found in the document.
    """
    try:
        payload = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedInput(f"not valid JSON: {exc}") from exc
    root = _parse_node(_find_root(payload))
    width, height = screen_dims
    if width <= 0 or height <= 0:
        raise MalformedInput(f"screen dims must be positive, got {screen_dims}")
    return UiTree(root=root, screen_width=width, screen_height=height)


def sanitize_id(value: str) -> str:
    """Restrict an id to [A-Za-z0-9_-]; everything else becomes '_'."""
    return "".join(ch if ch in _ID_SAFE else "_" for ch in value)


def _clean(node: UiNode, width: int, height: int, is_root: bool) -> list[UiNode]:
    """Clamp bounds and filter: invisible subtrees are dropped, zero-area
    nodes are spliced out with their children promoted in place. The root
    always survives."""
    if not node.visible and not is_root:
        return []
    bounds = node.bounds.clamped(width, height)
    kept_children: list[UiNode] = []
    for child in node.children:
        kept_children.extend(_clean(child, width, height, False))
    node = replace(node, bounds=bounds, children=tuple(kept_children))
    if bounds.area == 0 and not is_root:
        return kept_children
    return [node]


def normalize(tree: UiTree) -> UiTree:
    """Produce the canonical tree used for markup emission.

    Drops invisible and zero-area nodes, clamps every box to the screen rect,
    and gives every surviving node a unique sanitized id (synthesizing
    ``el0``, ``el1``, ... in depth-first preorder where the source had none).
    Idempotent: normalizing a normalized tree returns an equal tree.
    """
    root = _clean(tree.root, tree.screen_width, tree.screen_height, True)[0]

    # First pass: sanitize present ids, synthesize missing ones.
    order = list(root.walk())
    assigned: list[str] = []
    synth_counter = 0
    for node in order:
        rid = sanitize_id(node.resource_id) if node.resource_id else ""
        if not rid:
            rid = f"el{synth_counter}"
            synth_counter += 1
        assigned.append(rid)

    # Second pass: disambiguate duplicates with _2, _3, ... suffixes, never
    # colliding with ids still to come.
    remaining: dict[str, int] = {}
    for rid in assigned:
        remaining[rid] = remaining.get(rid, 0) + 1
    taken: set[str] = set()
    unique: list[str] = []
    for rid in assigned:
        remaining[rid] -= 1
        final = rid
        if final in taken:
            n = 2
            while f"{rid}_{n}" in taken or remaining.get(f"{rid}_{n}", 0) > 0:
                n += 1
            final = f"{rid}_{n}"
        taken.add(final)
        unique.append(final)

    ids = iter(unique)

    def rebuild(node: UiNode) -> UiNode:
        rid = next(ids)
        return replace(node, resource_id=rid, children=tuple(rebuild(c) for c in node.children))

    return replace(tree, root=rebuild(root))
