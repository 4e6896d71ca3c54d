"""The constrained wireframe markup: emission from UI trees and tolerant parsing.

One screen is a single document::

    <html>
    <style>
    body { width:1440px; height:2560px; }
    .title { position:absolute; top:84px; left:0px; width:1440px; height:168px; }
    </style>
    <body>
    <p class=title>Settings</p>
    </body>
    </html>

Elements appear in depth-first preorder, one line each; every element owns
exactly one absolute-position style rule keyed by its id. Only the tags in
CLASS_TO_TAG's codomain exist. Serialization is canonical and deterministic,
so equal documents yield byte-identical text. The parser is tolerant: it
accepts truncated or sloppy generated markup and always returns a document
satisfying the type invariants, or raises Unparseable when there is nothing
recognizable at all.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from html import escape
from html.parser import HTMLParser
from typing import TYPE_CHECKING, Iterator, NamedTuple

from .errors import Unparseable
from .geometry import Rect
from .hierarchy import DEFAULT_SCREEN_DIMS, UiNode, UiTree, sanitize_id

if TYPE_CHECKING:
    from .beautify.typography import TypographyPlan

DEFAULT_BOX_HEIGHT = 48


class Tag(str, Enum):
    PARAGRAPH = "paragraph"
    BUTTON = "button"
    IMAGE = "image"
    TEXT_INPUT = "text_input"
    CHECKBOX = "checkbox"
    RADIO = "radio"
    DATE_PICKER = "date_picker"
    SELECT = "select"
    VIDEO = "video"
    CONTAINER = "container"


class Placement(str, Enum):
    """Where an element's content lands in markup."""

    TEXT_CONTENT = "text_content"  # between the opening and closing tag
    PLACEHOLDER = "placeholder"    # placeholder= attribute
    LABEL = "label"                # trailing <label for=id> element
    VALUE = "value"                # value= attribute
    ALT = "alt"                    # alt= attribute
    NONE = "none"


class ClassMapping(NamedTuple):
    tag: Tag
    placement: Placement


_PLACEMENT_BY_TAG = {
    Tag.PARAGRAPH: Placement.TEXT_CONTENT,
    Tag.BUTTON: Placement.TEXT_CONTENT,
    Tag.IMAGE: Placement.ALT,
    Tag.TEXT_INPUT: Placement.PLACEHOLDER,
    Tag.CHECKBOX: Placement.LABEL,
    Tag.RADIO: Placement.LABEL,
    Tag.DATE_PICKER: Placement.VALUE,
    Tag.SELECT: Placement.LABEL,
    Tag.VIDEO: Placement.ALT,
    Tag.CONTAINER: Placement.NONE,
}

CLASS_TO_TAG = {
    "TextView": Tag.PARAGRAPH,
    "Button": Tag.BUTTON,
    "ToggleButton": Tag.BUTTON,
    "ImageView": Tag.IMAGE,
    "ImageButton": Tag.IMAGE,
    "EditText": Tag.TEXT_INPUT,
    "CheckBox": Tag.CHECKBOX,
    "Switch": Tag.CHECKBOX,
    "RadioButton": Tag.RADIO,
    "DatePicker": Tag.DATE_PICKER,
    "Spinner": Tag.SELECT,
    "VideoView": Tag.VIDEO,
    "LinearLayout": Tag.CONTAINER,
}


def map_class(native_class: str) -> ClassMapping:
    """Total mapping from a native view class to (tag, content placement).

    The named classes map to their listed tags; every other string is a
    Container.
    """
    tag = CLASS_TO_TAG.get(native_class, Tag.CONTAINER)
    return ClassMapping(tag, _PLACEMENT_BY_TAG[tag])


class FontClass(str, Enum):
    TITLE = "title"
    NORMAL = "normal"
    SUBTITLE = "subtitle"


def font_class_for_id(element_id: str) -> FontClass:
    """Infer the font class from the element id (subtitle beats title)."""
    lowered = element_id.lower()
    if "subtitle" in lowered:
        return FontClass.SUBTITLE
    if "title" in lowered:
        return FontClass.TITLE
    return FontClass.NORMAL


class Alignment(str, Enum):
    LEFT = "left"
    CENTER = "center"
    RIGHT = "right"


@dataclass(slots=True)
class WireframeElement:
    id: str
    tag: Tag
    box: Rect
    text: str | None = None
    alt_text: str | None = None
    icon: int | None = None
    font_class: FontClass = FontClass.NORMAL
    children: list["WireframeElement"] = field(default_factory=list)
    typography: "TypographyPlan | None" = None

    def walk(self) -> Iterator["WireframeElement"]:
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(slots=True)
class WireframeDocument:
    screen_width: int
    screen_height: int
    roots: list[WireframeElement] = field(default_factory=list)

    def walk(self) -> Iterator[WireframeElement]:
        """Depth-first preorder over all elements."""
        for root in self.roots:
            yield from root.walk()

    def element_count(self) -> int:
        return sum(1 for _ in self.walk())

    def find(self, element_id: str) -> WireframeElement | None:
        for el in self.walk():
            if el.id == element_id:
                return el
        return None


@dataclass(frozen=True, slots=True)
class Violation:
    kind: str
    element_id: str | None
    detail: str


# --- tree -> document -------------------------------------------------------


def document_from_tree(tree: UiTree) -> WireframeDocument:
    """Map a normalized UI tree onto the wireframe document model.

    Children of a non-container node are promoted to following siblings so
    the depth-first element order is preserved while only containers nest.
    """

    def convert(node: UiNode) -> list[WireframeElement]:
        tag, placement = map_class(node.native_class)
        element_id = node.resource_id or ""
        el = WireframeElement(
            id=element_id,
            tag=tag,
            box=Rect(node.bounds.left, node.bounds.top, node.bounds.width, node.bounds.height),
            font_class=font_class_for_id(element_id),
        )
        if placement is Placement.ALT:
            el.alt_text = node.content_desc
        elif placement is not Placement.NONE:
            el.text = node.text
        converted_children: list[WireframeElement] = []
        for child in node.children:
            converted_children.extend(convert(child))
        if tag is Tag.CONTAINER:
            el.children = converted_children
            return [el]
        return [el] + converted_children

    return WireframeDocument(
        screen_width=tree.screen_width,
        screen_height=tree.screen_height,
        roots=convert(tree.root),
    )


# --- serialization ----------------------------------------------------------


def _attr(value: str) -> str:
    return escape(value, quote=True)


def _element_lines(el: WireframeElement) -> list[str]:
    cid = el.id
    text = escape(el.text, quote=False) if el.text else None
    alt = f' alt="{_attr(el.alt_text)}"' if el.alt_text else ""
    if el.tag is Tag.PARAGRAPH:
        return [f"<p class={cid}>{text or ''}</p>"]
    if el.tag is Tag.BUTTON:
        return [f"<button class={cid}{alt}>{text or ''}</button>"]
    if el.tag is Tag.IMAGE:
        return [f"<img class={cid}{alt} />"]
    if el.tag is Tag.VIDEO:
        return [f"<video class={cid}{alt}></video>"]
    if el.tag is Tag.TEXT_INPUT:
        placeholder = f' placeholder="{_attr(el.text)}"' if el.text else ""
        return [f'<input class={cid}{placeholder} type="text">']
    if el.tag is Tag.CHECKBOX or el.tag is Tag.RADIO:
        kind = "checkbox" if el.tag is Tag.CHECKBOX else "radio"
        lines = [f'<input class={cid} type="{kind}">']
        if text:
            lines.append(f"<label for={cid}>{text}</label>")
        return lines
    if el.tag is Tag.DATE_PICKER:
        value = f' value="{_attr(el.text)}"' if el.text else ""
        return [f'<input class={cid} type="date"{value}>']
    if el.tag is Tag.SELECT:
        lines = [f'<select class={cid} type="radio"></select>']
        if text:
            lines.append(f"<label for={cid}>{text}</label>")
        return lines
    # Container
    lines = [f"<div class={cid}>"]
    for child in el.children:
        lines.extend(_element_lines(child))
    lines.append("</div>")
    return lines


def serialize(doc: WireframeDocument) -> str:
    """Canonical text for a document: style block first, body second,
    style rules in depth-first element order. Ends exactly with </html>."""
    lines = ["<html>", "<style>"]
    lines.append(f"body {{ width:{doc.screen_width}px; height:{doc.screen_height}px; }}")
    for el in doc.walk():
        b = el.box
        lines.append(
            f".{el.id} {{ position:absolute; top:{b.top}px; left:{b.left}px; "
            f"width:{b.width}px; height:{b.height}px; }}"
        )
    lines.append("</style>")
    lines.append("<body>")
    for root in doc.roots:
        lines.extend(_element_lines(root))
    lines.append("</body>")
    lines.append("</html>")
    return "\n".join(lines)


def emit_dsl(tree: UiTree) -> str:
    """Emit the canonical markup for a normalized UI tree."""
    return serialize(document_from_tree(tree))


# --- tolerant parsing -------------------------------------------------------

_STYLE_RULE_RE = re.compile(r"([^{}]+)\{([^{}]*)\}")
_STYLE_PROP_RE = re.compile(r"([a-zA-Z-]+)\s*:\s*(-?\d+(?:\.\d+)?)\s*(?:px)?\s*(?:;|$)")

_INPUT_TYPE_TO_TAG = {
    "text": Tag.TEXT_INPUT,
    "checkbox": Tag.CHECKBOX,
    "radio": Tag.RADIO,
    "date": Tag.DATE_PICKER,
}

# Tags that never take a closing tag in the markup.
_VOID_TAGS = {"input", "img", "br", "hr", "meta", "link"}
# Structural tags that do not become elements.
_STRUCTURAL = {"html", "body", "style", "head"}


def _parse_style_props(text: str) -> dict[str, int]:
    props: dict[str, int] = {}
    for name, value in _STYLE_PROP_RE.findall(text):
        props[name.lower()] = int(round(float(value)))
    return props


class _PendingElement:
    __slots__ = ("element", "source_tag", "source_class", "text_parts", "parent")

    def __init__(self, element: WireframeElement, source_tag: str, source_class: str):
        self.element = element
        self.source_tag = source_tag
        self.source_class = source_class
        self.text_parts: list[str] = []


class _DslParser(HTMLParser):
    """Event handler that rebuilds a document from sloppy markup.

    Recovery rules: unclosed leaf elements close when the next tag opens;
    unclosed containers close at their parent boundary or at end of input;
    unknown tags become containers; stray labels bind to the most recent
    matching input or fall back to paragraphs.
    """

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.roots: list[WireframeElement] = []
        self.container_stack: list[tuple[WireframeElement, str]] = []
        self.open_leaf: _PendingElement | None = None
        self.in_style = False
        self.style_text: list[str] = []
        self.source_class: dict[int, str] = {}  # id(element) -> raw class value
        self.inline_style: dict[int, dict[str, int]] = {}
        self.elements: list[WireframeElement] = []
        self.label_buffer: list[str] = []
        self.in_label: str | None = None  # the for= target, "" when absent

    # -- tree plumbing --

    def _sink(self) -> list[WireframeElement]:
        if self.container_stack:
            return self.container_stack[-1][0].children
        return self.roots

    def _close_leaf(self) -> None:
        pending = self.open_leaf
        if pending is None:
            return
        text = "".join(pending.text_parts).strip()
        if text:
            el = pending.element
            if el.tag in (Tag.IMAGE, Tag.VIDEO):
                if not el.alt_text:
                    el.alt_text = text
            else:
                el.text = text
        self.open_leaf = None

    def _close_label(self) -> None:
        if self.in_label is None:
            return
        target, self.in_label = self.in_label, None
        text = "".join(self.label_buffer).strip()
        self.label_buffer = []
        if not text:
            return
        if target:
            for el in reversed(self.elements):
                if (
                    self.source_class.get(id(el)) == target
                    and el.tag in (Tag.CHECKBOX, Tag.RADIO, Tag.SELECT)
                    and el.text is None
                ):
                    el.text = text
                    return
        # No binding target: keep the text as a plain paragraph.
        self._add_element(WireframeElement(id="", tag=Tag.PARAGRAPH, box=_UNSET_BOX, text=text), "")

    def _add_element(self, el: WireframeElement, source_class: str) -> None:
        self.source_class[id(el)] = source_class
        self.elements.append(el)
        self._sink().append(el)

    # -- HTMLParser hooks --

    def handle_starttag(self, tag: str, attrs: list[tuple[str, str | None]]) -> None:
        tag = tag.lower()
        if self.in_style:
            return
        if tag == "style":
            self._close_leaf()
            self._close_label()
            self.in_style = True
            return
        if tag in _STRUCTURAL:
            return
        self._close_leaf()
        if tag == "label":
            self._close_label()
            attr_map = {k: (v or "") for k, v in attrs}
            self.in_label = attr_map.get("for", "")
            return
        self._close_label()
        attr_map = {k: (v or "") for k, v in attrs}
        cls = attr_map.get("class", "").strip()
        inline = _parse_style_props(attr_map["style"]) if "style" in attr_map else None

        if tag == "p":
            el = WireframeElement(id="", tag=Tag.PARAGRAPH, box=_UNSET_BOX)
        elif tag == "button":
            el = WireframeElement(id="", tag=Tag.BUTTON, box=_UNSET_BOX)
            if attr_map.get("alt"):
                el.alt_text = attr_map["alt"]
        elif tag == "img":
            el = WireframeElement(id="", tag=Tag.IMAGE, box=_UNSET_BOX, alt_text=attr_map.get("alt") or None)
        elif tag == "video":
            el = WireframeElement(id="", tag=Tag.VIDEO, box=_UNSET_BOX, alt_text=attr_map.get("alt") or None)
        elif tag == "input":
            itag = _INPUT_TYPE_TO_TAG.get(attr_map.get("type", "text").lower(), Tag.TEXT_INPUT)
            el = WireframeElement(id="", tag=itag, box=_UNSET_BOX)
            if itag is Tag.TEXT_INPUT:
                el.text = attr_map.get("placeholder") or None
            elif itag is Tag.DATE_PICKER:
                el.text = attr_map.get("value") or None
        elif tag == "select":
            el = WireframeElement(id="", tag=Tag.SELECT, box=_UNSET_BOX)
        else:
            # div and anything unrecognized
            el = WireframeElement(id="", tag=Tag.CONTAINER, box=_UNSET_BOX)

        self._add_element(el, cls)
        if inline:
            self.inline_style[id(el)] = inline

        if el.tag is Tag.CONTAINER:
            self.container_stack.append((el, tag))
        elif tag not in _VOID_TAGS:
            self.open_leaf = _PendingElement(el, tag, cls)

    def handle_startendtag(self, tag: str, attrs: list[tuple[str, str | None]]) -> None:
        self.handle_starttag(tag, attrs)
        # Self-closed leaves carry no text content.
        if self.open_leaf is not None and self.open_leaf.source_tag == tag.lower():
            self._close_leaf()

    def handle_endtag(self, tag: str) -> None:
        tag = tag.lower()
        if tag == "style":
            self.in_style = False
            return
        if self.in_style:
            return
        if tag == "label":
            self._close_label()
            return
        if self.open_leaf is not None:
            if self.open_leaf.source_tag == tag:
                self._close_leaf()
                return
            self._close_leaf()
        if tag in _STRUCTURAL:
            self._close_label()
            self.container_stack.clear()
            return
        # Pop containers up to the matching one; ignore unmatched closers.
        for i in range(len(self.container_stack) - 1, -1, -1):
            if self.container_stack[i][1] == tag:
                del self.container_stack[i:]
                return

    def handle_data(self, data: str) -> None:
        if self.in_style:
            self.style_text.append(data)
        elif self.in_label is not None:
            self.label_buffer.append(data)
        elif self.open_leaf is not None:
            self.open_leaf.text_parts.append(data)

    def close(self) -> None:  # type: ignore[override]
        super().close()
        self._close_leaf()
        self._close_label()
        self.container_stack.clear()


_UNSET_BOX = Rect(0, 0, -1, -1)


def parse_dsl(raw: str) -> WireframeDocument:
    """Tolerantly parse generated markup into a valid document.

    Raises Unparseable when no element can be recognized. Elements missing a
    style rule get the default box (0, 0, screen_width, 48); duplicate ids are
    disambiguated with _2, _3, ... suffixes; ids are synthesized when missing.
    """
    parser = _DslParser()
    try:
        parser.feed(raw)
        parser.close()
    except Exception as exc:  # pragma: no cover - HTMLParser rarely raises
        raise Unparseable(f"markup could not be scanned: {exc}") from exc

    elements = parser.elements
    if not elements:
        raise Unparseable("no recognizable element in input")

    # Style rules keyed by bare selector name (".id" or "body").
    rules: dict[str, dict[str, int]] = {}
    for selector, body in _STYLE_RULE_RE.findall("".join(parser.style_text)):
        name = selector.strip().lstrip(".#").strip()
        if name:
            rules.setdefault(name, _parse_style_props(body))

    body_rule = rules.get("body", {})
    screen_width = body_rule.get("width") or DEFAULT_SCREEN_DIMS[0]
    screen_height = body_rule.get("height") or DEFAULT_SCREEN_DIMS[1]
    if screen_width <= 0:
        screen_width = DEFAULT_SCREEN_DIMS[0]
    if screen_height <= 0:
        screen_height = DEFAULT_SCREEN_DIMS[1]

    # Assign ids: sanitize declared classes, synthesize the rest, then dedupe.
    assigned: list[str] = []
    synth_counter = 0
    for el in elements:
        cid = sanitize_id(parser.source_class.get(id(el), ""))
        if not cid:
            cid = f"el{synth_counter}"
            synth_counter += 1
        assigned.append(cid)
    remaining: dict[str, int] = {}
    for cid in assigned:
        remaining[cid] = remaining.get(cid, 0) + 1
    taken: set[str] = set()
    for el, cid in zip(elements, assigned):
        remaining[cid] -= 1
        final = cid
        if final in taken:
            n = 2
            while f"{cid}_{n}" in taken or remaining.get(f"{cid}_{n}", 0) > 0:
                n += 1
            final = f"{cid}_{n}"
        taken.add(final)
        el.id = final
        el.font_class = font_class_for_id(final)

    # Resolve boxes: stylesheet rule by declared class, inline style fallback,
    # then the default box.
    for el in elements:
        declared = parser.source_class.get(id(el), "")
        props = rules.get(sanitize_id(declared)) or rules.get(declared) or {}
        inline = parser.inline_style.get(id(el)) or {}
        merged = {**props, **inline}
        el.box = Rect(
            merged.get("left", 0),
            merged.get("top", 0),
            merged.get("width", screen_width),
            merged.get("height", DEFAULT_BOX_HEIGHT),
        )
        if el.box.width < 0 or el.box.height < 0:
            el.box = Rect(el.box.left, el.box.top, max(0, el.box.width), max(0, el.box.height))

    return WireframeDocument(
        screen_width=screen_width,
        screen_height=screen_height,
        roots=parser.roots,
    )


# --- validation -------------------------------------------------------------

_TEXT_ONLY_TAGS = {
    Tag.PARAGRAPH,
    Tag.TEXT_INPUT,
    Tag.CHECKBOX,
    Tag.RADIO,
    Tag.DATE_PICKER,
    Tag.SELECT,
}


def validate(doc: WireframeDocument) -> list[Violation]:
    """Report invariant breaches; an empty list means well-formed.

    Buttons may carry alt text (tolerated for generated icon buttons); all
    other text-carrying tags must not, and images/videos must not carry text.
    """
    violations: list[Violation] = []
    if doc.screen_width <= 0 or doc.screen_height <= 0:
        violations.append(
            Violation("nonpositive_screen", None, f"screen is {doc.screen_width}x{doc.screen_height}")
        )
    seen: set[str] = set()
    for el in doc.walk():
        if not el.id:
            violations.append(Violation("empty_id", el.id, "element id is empty"))
        elif el.id in seen:
            violations.append(Violation("duplicate_id", el.id, "id appears more than once"))
        else:
            seen.add(el.id)
        if el.tag in (Tag.IMAGE, Tag.VIDEO) and el.text:
            violations.append(Violation("text_on_image", el.id, f"{el.tag.value} carries text"))
        if el.tag in _TEXT_ONLY_TAGS and el.alt_text:
            violations.append(Violation("alt_on_text_element", el.id, f"{el.tag.value} carries alt text"))
        if el.box.width < 0 or el.box.height < 0:
            violations.append(Violation("negative_box", el.id, f"box is {el.box}"))
        if el.children and el.tag is not Tag.CONTAINER:
            violations.append(Violation("children_on_leaf", el.id, f"{el.tag.value} has children"))
    return violations
