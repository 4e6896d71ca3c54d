"""Independent brute-force oracle for the typography optimizer.

Enumerates every word-boundary wrapping recursively (a different algorithm
from the implementation's bitmask/DP search) and scores each against the
same measurement model, returning the best achievable occupied ratio.
"""

from __future__ import annotations

from typing import Iterator, Sequence

from wiregen.beautify.typography import font_ladder, measure
from wiregen.dsl import FontClass
from wiregen.geometry import Rect


def all_wrappings(words: Sequence[str]) -> Iterator[tuple[str, ...]]:
    if len(words) == 1:
        yield (words[0],)
        return
    head, rest = words[0], words[1:]
    for wrapping in all_wrappings(rest):
        yield (head,) + wrapping
        yield (head + " " + wrapping[0],) + wrapping[1:]


def oracle_best_ratio(text: str, font_class: FontClass, box: Rect) -> float:
    """Best occupied ratio over the complete wrapping x ladder candidate set,
    or the least dimension overrun at the smallest size when nothing fits."""
    words = text.split()
    if not words:
        return 0.0
    ladder = font_ladder(font_class)
    block_area = box.width * box.height
    feasible: list[float] = []
    for lines in all_wrappings(words):
        for font_px in ladder:
            ink_w, ink_h = measure(lines, font_px)
            if ink_w <= box.width and ink_h <= box.height:
                feasible.append((ink_w * ink_h) / block_area)
    if feasible:
        return max(feasible)
    smallest = ladder[-1]
    overruns = []
    for lines in all_wrappings(words):
        ink_w, ink_h = measure(lines, smallest)
        overruns.append(max(ink_w / box.width, ink_h / box.height))
    return min(overruns)
