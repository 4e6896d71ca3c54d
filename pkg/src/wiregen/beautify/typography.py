"""Fit text into its block: choose wrapping, font size, and alignment.

A candidate is one (wrapping, font size) pair. Its ink bounding box is
measured with a fixed affine model (average glyph width and line height as
ratios of the font size, pinned in resources/typography.json). Among the
candidates whose bounding box fits the block, the winner maximizes the
block-area fraction the bounding box occupies; single-line winners center,
multi-line winners left-align. When nothing fits even at the smallest size,
the plan with the least dimension overrun at that size is returned with
occupied_ratio > 1 as the overflow flag.

Wrappings break at word boundaries only. Up to 12 words every one of the
2^(k-1) wrappings is scored; beyond that, one minimal-max-width wrapping per
line count is produced by dynamic programming and those k candidates are
scored instead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterator, Sequence

from ..dsl import Alignment, FontClass
from ..errors import EmptyBox
from ..geometry import Rect

EXHAUSTIVE_WORD_LIMIT = 12


@lru_cache(maxsize=1)
def _config() -> dict:
    return json.loads(
        resources.files("wiregen.resources").joinpath("typography.json").read_text("utf-8")
    )


def font_ladder(font_class: FontClass) -> tuple[int, ...]:
    """Candidate font sizes for a font class, largest first."""
    return tuple(_config()["ladders"][font_class.value])


def line_width_px(char_count: int, font_px: int) -> float:
    """Measured ink width of a line of char_count glyphs."""
    return char_count * _config()["glyph_width_ratio"] * font_px


def line_height_px(font_px: int) -> float:
    return _config()["line_height_ratio"] * font_px


@dataclass(frozen=True, slots=True)
class TypographyPlan:
    lines: tuple[str, ...]
    font_px: int
    alignment: Alignment
    occupied_ratio: float


def _alignment_for(lines: Sequence[str]) -> Alignment:
    return Alignment.LEFT if len(lines) > 1 else Alignment.CENTER


def measure(lines: Sequence[str], font_px: int) -> tuple[float, float]:
    """Ink bounding box (width, height) of wrapped lines at a font size."""
    if not lines:
        return 0.0, 0.0
    widest = max(len(line) for line in lines)
    return line_width_px(widest, font_px), len(lines) * line_height_px(font_px)


def wrappings_exhaustive(words: Sequence[str]) -> Iterator[tuple[str, ...]]:
    """All 2^(k-1) word-boundary wrappings, in break-mask order."""
    k = len(words)
    for mask in range(1 << max(0, k - 1)):
        lines: list[str] = []
        current = [words[0]]
        for i in range(1, k):
            if mask & (1 << (i - 1)):
                lines.append(" ".join(current))
                current = [words[i]]
            else:
                current.append(words[i])
        lines.append(" ".join(current))
        yield tuple(lines)


def wrappings_balanced(words: Sequence[str]) -> Iterator[tuple[str, ...]]:
    """One minimal-max-width wrapping per line count L in 1..k.

    best[j][l] = least achievable maximum line char-width over the first j
    words split into l lines; the chosen split points are rebuilt per L.
    """
    k = len(words)
    lengths = [len(w) for w in words]
    prefix = [0]
    for length in lengths:
        prefix.append(prefix[-1] + length)

    def width(i: int, j: int) -> int:
        # chars of words[i:j] joined with single spaces
        return prefix[j] - prefix[i] + (j - i - 1)

    INF = float("inf")
    best = [[INF] * (k + 1) for _ in range(k + 1)]
    choice = [[0] * (k + 1) for _ in range(k + 1)]
    best[0][0] = 0.0
    for j in range(1, k + 1):
        for l in range(1, j + 1):
            for i in range(l - 1, j):
                cand = max(best[i][l - 1], width(i, j))
                if cand < best[j][l]:
                    best[j][l] = cand
                    choice[j][l] = i
    for l in range(1, k + 1):
        cuts = []
        j = k
        for level in range(l, 0, -1):
            i = choice[j][level]
            cuts.append((i, j))
            j = i
        cuts.reverse()
        yield tuple(" ".join(words[i:j]) for i, j in cuts)


def candidate_wrappings(words: Sequence[str]) -> Iterator[tuple[str, ...]]:
    if len(words) <= EXHAUSTIVE_WORD_LIMIT:
        return wrappings_exhaustive(words)
    return wrappings_balanced(words)


def optimize_typography(text: str, font_class: FontClass, box: Rect) -> TypographyPlan:
    """Pick the best (wrapping, font size) for a text block.

    Raises EmptyBox for non-positive box dimensions. Empty text yields an
    empty centered plan with ratio 0.
    """
    if box.width <= 0 or box.height <= 0:
        raise EmptyBox(f"box must have positive dimensions, got {box.width}x{box.height}")
    words = text.split()
    ladder = font_ladder(font_class)
    if not words:
        return TypographyPlan(lines=(), font_px=ladder[0], alignment=Alignment.CENTER, occupied_ratio=0.0)

    block_area = box.width * box.height
    best: TypographyPlan | None = None
    best_key: tuple | None = None
    for lines in candidate_wrappings(words):
        for font_px in ladder:
            ink_w, ink_h = measure(lines, font_px)
            if ink_w > box.width or ink_h > box.height:
                continue
            ratio = (ink_w * ink_h) / block_area
            key = (ratio, -len(lines), font_px)
            if best_key is None or key > best_key:
                best_key = key
                best = TypographyPlan(
                    lines=lines, font_px=font_px, alignment=_alignment_for(lines), occupied_ratio=ratio
                )
    if best is not None:
        return best

    # Nothing fits: smallest ladder size, least dimension overrun, flagged
    # by a ratio above 1.
    smallest = ladder[-1]
    fallback: TypographyPlan | None = None
    fallback_key: tuple | None = None
    for lines in candidate_wrappings(words):
        ink_w, ink_h = measure(lines, smallest)
        overrun = max(ink_w / box.width, ink_h / box.height)
        key = (-overrun, -len(lines))
        if fallback_key is None or key > fallback_key:
            fallback_key = key
            fallback = TypographyPlan(
                lines=lines, font_px=smallest, alignment=_alignment_for(lines), occupied_ratio=overrun
            )
    assert fallback is not None
    return fallback
