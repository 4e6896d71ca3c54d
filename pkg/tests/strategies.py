"""Hypothesis strategies for view-hierarchy trees."""

from __future__ import annotations

from hypothesis import strategies as st

from wiregen.geometry import PixelBounds
from wiregen.hierarchy import UiNode, UiTree

SCREEN_W, SCREEN_H = 1440, 2560

CLASSES = [
    "TextView", "Button", "ToggleButton", "ImageView", "ImageButton", "EditText",
    "CheckBox", "Switch", "RadioButton", "DatePicker", "Spinner", "VideoView",
    "LinearLayout", "FrameLayout", "MysteryWidget",
]

texts = st.one_of(
    st.none(),
    st.text(alphabet="abcxyz <>&\"'0189", min_size=1, max_size=24)
    .map(lambda s: " ".join(s.split()))
    .filter(bool),
)

resource_ids = st.one_of(
    st.none(),
    st.from_regex(r"[a-z][a-z0-9_]{0,10}", fullmatch=True).map(lambda s: f"com.app:id/{s}"),
)


@st.composite
def bounds(draw) -> PixelBounds:
    left = draw(st.integers(-100, SCREEN_W - 20))
    top = draw(st.integers(-100, SCREEN_H - 20))
    width = draw(st.integers(0, 1000))
    height = draw(st.integers(0, 800))
    return PixelBounds(left, top, left + width, top + height)


@st.composite
def ui_nodes(draw, depth: int = 0) -> UiNode:
    children = ()
    if depth < 3:
        children = tuple(draw(st.lists(ui_nodes(depth=depth + 1), max_size=3 if depth < 2 else 0)))
    return UiNode(
        native_class=draw(st.sampled_from(CLASSES)),
        bounds=draw(bounds()),
        resource_id=draw(resource_ids),
        text=draw(texts),
        content_desc=draw(texts),
        clickable=draw(st.booleans()),
        visible=draw(st.booleans()),
        children=children,
    )


@st.composite
def ui_trees(draw) -> UiTree:
    root = UiNode(
        native_class="FrameLayout",
        bounds=PixelBounds(0, 0, SCREEN_W, SCREEN_H),
        children=tuple(draw(st.lists(ui_nodes(depth=1), max_size=4))),
    )
    return UiTree(root=root, screen_width=SCREEN_W, screen_height=SCREEN_H)
