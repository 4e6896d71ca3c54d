"""Shared test fixtures: the all-classes tree and friends."""

from __future__ import annotations

from wiregen.geometry import PixelBounds
from wiregen.hierarchy import UiNode, UiTree, normalize

SCREEN_W, SCREEN_H = 1440, 2560


def _node(native_class: str, rid: str, top: int, text=None, desc=None, height=120) -> UiNode:
    return UiNode(
        native_class=native_class,
        resource_id=rid,
        bounds=PixelBounds(120, top, 1320, top + height),
        text=text,
        content_desc=desc,
    )


def all_classes_tree() -> UiTree:
    """One screen exercising every named class conversion plus an unknown one."""
    rows = [
        _node("TextView", "title", 84, text="All widgets", height=168),
        _node("Button", "save_button", 300, text="Save"),
        _node("ToggleButton", "mute_toggle", 470, text="Mute"),
        _node("ImageView", "cover_image", 640, desc="album art"),
        _node("ImageButton", "back_button", 810, desc="navigate up"),
        _node("EditText", "email", 980, text="Email"),
        _node("CheckBox", "remember", 1150, text="Remember me"),
        _node("Switch", "dark_switch", 1320, text="Dark theme"),
        _node("RadioButton", "plan_basic", 1490, text="Basic plan"),
        _node("DatePicker", "start_date", 1660, text="2024-06-01"),
        _node("Spinner", "country", 1830, text="Country"),
        _node("VideoView", "intro_video", 2000, desc="intro clip"),
        _node("CustomFancyWidget", "mystery", 2170),
    ]
    root = UiNode(
        native_class="LinearLayout",
        resource_id="content",
        bounds=PixelBounds(0, 0, SCREEN_W, SCREEN_H),
        children=tuple(rows),
    )
    return normalize(UiTree(root=root, screen_width=SCREEN_W, screen_height=SCREEN_H))
