"""Integer pixel geometry: screen-space bounds and element boxes."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class PixelBounds:
    """Raw view-hierarchy bounds as (left, top, right, bottom) screen pixels."""

    left: int
    top: int
    right: int
    bottom: int

    @property
    def width(self) -> int:
        return self.right - self.left

    @property
    def height(self) -> int:
        return self.bottom - self.top

    @property
    def area(self) -> int:
        return max(0, self.width) * max(0, self.height)

    def clamped(self, screen_width: int, screen_height: int) -> "PixelBounds":
        """Clamp to the screen rect; degenerate inputs collapse to zero area."""
        left = min(max(self.left, 0), screen_width)
        top = min(max(self.top, 0), screen_height)
        right = min(max(self.right, left), screen_width)
        bottom = min(max(self.bottom, top), screen_height)
        return PixelBounds(left, top, right, bottom)


@dataclass(frozen=True, slots=True)
class Rect:
    """An element box as (left, top, width, height) pixels."""

    left: int
    top: int
    width: int
    height: int

    @property
    def right(self) -> int:
        return self.left + self.width

    @property
    def bottom(self) -> int:
        return self.top + self.height

    @property
    def area(self) -> int:
        return max(0, self.width) * max(0, self.height)

    def moved(self, dx: int, dy: int) -> "Rect":
        return Rect(self.left + dx, self.top + dy, self.width, self.height)


def rect_from_bounds(bounds: PixelBounds) -> Rect:
    return Rect(bounds.left, bounds.top, bounds.width, bounds.height)


def intersection(a: Rect, b: Rect) -> Rect:
    """Intersection rect; width/height are zero when the boxes are disjoint."""
    left = max(a.left, b.left)
    top = max(a.top, b.top)
    right = min(a.right, b.right)
    bottom = min(a.bottom, b.bottom)
    return Rect(left, top, max(0, right - left), max(0, bottom - top))


def overlap_area(a: Rect, b: Rect) -> int:
    return intersection(a, b).area


def iou(a: Rect, b: Rect) -> float:
    """Intersection over union; 0.0 when either box is degenerate."""
    inter = overlap_area(a, b)
    union = a.area + b.area - inter
    if union <= 0:
        return 0.0
    return inter / union


def clamp_rect(box: Rect, screen_width: int, screen_height: int) -> Rect:
    left = min(max(box.left, 0), screen_width)
    top = min(max(box.top, 0), screen_height)
    right = min(max(box.right, left), screen_width)
    bottom = min(max(box.bottom, top), screen_height)
    return Rect(left, top, right - left, bottom - top)
