"""Render a wireframe document as a deterministic monochrome SVG.

Every element becomes exactly one top-level <g> in depth-first order, so
structure is easy to assert on. All paint is grayscale; icons are embedded
vector paths drawn in a 24x24 design box and scaled to fit their element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape, quoteattr

from .beautify.typography import font_ladder, line_height_px, line_width_px
from .dsl import Alignment, Tag, WireframeDocument, WireframeElement
from .geometry import Rect

# Glyphs are hand-drawn stroke paths in a 24x24 box keyed by lexicon name.
ICON_PATHS: dict[str, str] = {
    "back_arrow": "M20 12H5M11 5l-7 7 7 7",
    "hamburger_menu": "M4 7h16M4 12h16M4 17h16",
    "gear": "M12 8a4 4 0 1 0 0 8a4 4 0 1 0 0-8M12 2v3M12 19v3M2 12h3M19 12h3M5 5l2 2M17 17l2 2M19 5l-2 2M7 17l-2 2",
    "three_dots": "M12 4.5a1.6 1.6 0 1 0 0 3.2a1.6 1.6 0 1 0 0-3.2M12 10.4a1.6 1.6 0 1 0 0 3.2a1.6 1.6 0 1 0 0-3.2M12 16.3a1.6 1.6 0 1 0 0 3.2a1.6 1.6 0 1 0 0-3.2",
    "info": "M12 3a9 9 0 1 0 0 18a9 9 0 1 0 0-18M12 8v1M12 11v6",
    "person": "M12 4a3.5 3.5 0 1 0 0 7a3.5 3.5 0 1 0 0-7M5 20a7 7 0 0 1 14 0",
    "close": "M5 5l14 14M19 5L5 19",
    "magnifier": "M10 4a6 6 0 1 0 0 12a6 6 0 1 0 0-12M14.5 14.5L20 20",
    "share": "M6 9.5a2.5 2.5 0 1 0 0 5a2.5 2.5 0 1 0 0-5M17 4a2.5 2.5 0 1 0 0 5a2.5 2.5 0 1 0 0-5M17 15a2.5 2.5 0 1 0 0 5a2.5 2.5 0 1 0 0-5M8.2 11l6.6-4.4M8.2 13l6.6 4.4",
    "heart": "M12 20C5.4 14.4 3.2 10.6 5.6 7.8C7.6 5.5 10.6 5.9 12 8.3C13.4 5.9 16.4 5.5 18.4 7.8C20.8 10.6 18.6 14.4 12 20Z",
}


def _gray(level: int) -> str:
    level = min(255, max(0, level))
    return f"#{level:02x}{level:02x}{level:02x}"


@dataclass(slots=True)
class RenderStyle:
    stroke_px: int = 3
    fill_gray: int = 238
    font_family_token: str = "sans-serif"
    icon_glyph_map: dict[str, str] = field(default_factory=lambda: dict(ICON_PATHS))

    @property
    def ink(self) -> str:
        return _gray(0)

    @property
    def faint_ink(self) -> str:
        return _gray(128)

    @property
    def fill(self) -> str:
        return _gray(self.fill_gray)


def _fmt(value: float) -> str:
    return f"{value:.2f}".rstrip("0").rstrip(".")


def _rect(box: Rect, style: RenderStyle, rx: int = 0, dashed: bool = False, fill: str | None = None) -> str:
    parts = [
        f'<rect x="{box.left}" y="{box.top}" width="{box.width}" height="{box.height}"',
        f'fill={quoteattr(fill or "none")}',
        f'stroke={quoteattr(style.ink)}',
        f'stroke-width="{style.stroke_px}"',
    ]
    if rx:
        parts.insert(1, f'rx="{rx}"')
    if dashed:
        parts.append('stroke-dasharray="12 8"')
    return " ".join(parts) + " />"


def _text(x: float, y: float, content: str, font_px: int, style: RenderStyle, anchor: str = "start",
          color: str | None = None) -> str:
    return (
        f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{font_px}" '
        f'font-family={quoteattr(style.font_family_token)} fill={quoteattr(color or style.ink)} '
        f'text-anchor="{anchor}">{escape(content)}</text>'
    )


def _fallback_font(el: WireframeElement) -> int:
    return font_ladder(el.font_class)[-1]


def _clipped_line(text: str, box: Rect, font_px: int) -> str:
    """Truncate to the glyph count that fits the box width."""
    if line_width_px(len(text), font_px) <= box.width:
        return text
    fits = int(box.width / line_width_px(1, font_px)) if box.width > 0 else 0
    return text[: max(0, fits)]


def _text_block(el: WireframeElement, style: RenderStyle, color: str | None = None) -> list[str]:
    """Lines from the typography plan, or one clipped line without a plan.

    Overflowing plans (ratio > 1) re-render as a single clipped line at the
    smallest ladder size with a dashed outline marking the clip.
    """
    box = el.box
    text = el.text or ""
    if not text or box.width <= 0 or box.height <= 0:
        return []
    plan = el.typography
    out: list[str] = []
    if plan is None or plan.occupied_ratio > 1 or not plan.lines:
        font_px = _fallback_font(el)
        if plan is not None and plan.occupied_ratio > 1:
            out.append(_rect(box, style, dashed=True))
        line = _clipped_line(" ".join(text.split()), box, font_px)
        if line:
            y = box.top + (box.height + 0.7 * font_px) / 2
            out.append(_text(box.left + box.width / 2, y, line, font_px, style, anchor="middle", color=color))
        return out
    height = line_height_px(plan.font_px)
    block_top = box.top + max(0.0, (box.height - len(plan.lines) * height) / 2)
    for i, line in enumerate(plan.lines):
        y = block_top + (i + 0.8) * height
        if plan.alignment is Alignment.CENTER:
            out.append(_text(box.left + box.width / 2, y, line, plan.font_px, style, anchor="middle", color=color))
        elif plan.alignment is Alignment.RIGHT:
            out.append(_text(box.right - 4, y, line, plan.font_px, style, anchor="end", color=color))
        else:
            out.append(_text(box.left + 4, y, line, plan.font_px, style, anchor="start", color=color))
    return out


def _icon(el: WireframeElement, glyph: str, style: RenderStyle) -> list[str]:
    path = style.icon_glyph_map.get(glyph)
    if path is None:
        return _placeholder(el.box, style)
    box = el.box
    scale = min(box.width, box.height) / 24 if min(box.width, box.height) > 0 else 1
    tx = box.left + (box.width - 24 * scale) / 2
    ty = box.top + (box.height - 24 * scale) / 2
    return [
        f'<g transform="translate({_fmt(tx)} {_fmt(ty)}) scale({_fmt(scale)})">'
        f'<path d="{path}" fill="none" stroke={quoteattr(style.ink)} stroke-width="2" '
        f'stroke-linecap="round" stroke-linejoin="round" /></g>'
    ]


def _placeholder(box: Rect, style: RenderStyle) -> list[str]:
    """Image placeholder: rectangle with corner-to-corner diagonals."""
    return [
        _rect(box, style, fill=style.fill),
        f'<line x1="{box.left}" y1="{box.top}" x2="{box.right}" y2="{box.bottom}" '
        f'stroke={quoteattr(style.ink)} stroke-width="{style.stroke_px}" />',
        f'<line x1="{box.left}" y1="{box.bottom}" x2="{box.right}" y2="{box.top}" '
        f'stroke={quoteattr(style.ink)} stroke-width="{style.stroke_px}" />',
    ]


def _render_element(el: WireframeElement, style: RenderStyle, lexicon_glyphs: dict[int, str]) -> str:
    box = el.box
    body: list[str] = []
    if el.tag is Tag.CONTAINER:
        if box.area > 0:
            body.append(_rect(box, style))
    elif el.tag in (Tag.IMAGE, Tag.VIDEO):
        glyph = lexicon_glyphs.get(el.icon) if el.icon else None
        if glyph:
            body.extend(_icon(el, glyph, style))
        else:
            body.extend(_placeholder(box, style))
            if el.tag is Tag.VIDEO:
                cx, cy = box.left + box.width / 2, box.top + box.height / 2
                r = max(8, min(box.width, box.height) // 6)
                body.append(
                    f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{r}" fill={quoteattr(style.fill)} '
                    f'stroke={quoteattr(style.ink)} stroke-width="{style.stroke_px}" />'
                )
    elif el.tag is Tag.BUTTON:
        body.append(_rect(box, style, rx=12, fill=style.fill))
        if el.icon and lexicon_glyphs.get(el.icon):
            body.extend(_icon(el, lexicon_glyphs[el.icon], style))
        else:
            body.extend(_text_block(_centered_text_copy(el), style))
    elif el.tag is Tag.TEXT_INPUT:
        body.append(_rect(box, style))
        body.extend(_text_block(el, style, color=style.faint_ink))
    elif el.tag is Tag.CHECKBOX or el.tag is Tag.RADIO:
        side = min(36, max(12, box.height // 2))
        cy = box.top + box.height / 2
        if el.tag is Tag.CHECKBOX:
            body.append(
                f'<rect x="{box.left}" y="{_fmt(cy - side / 2)}" width="{side}" height="{side}" '
                f'fill="none" stroke={quoteattr(style.ink)} stroke-width="{style.stroke_px}" />'
            )
        else:
            body.append(
                f'<circle cx="{_fmt(box.left + side / 2)}" cy="{_fmt(cy)}" r="{side // 2}" '
                f'fill="none" stroke={quoteattr(style.ink)} stroke-width="{style.stroke_px}" />'
            )
        if el.text:
            font_px = el.typography.font_px if el.typography else _fallback_font(el)
            body.append(
                _text(box.left + side + 12, cy + 0.35 * font_px, el.text, font_px, style)
            )
    elif el.tag is Tag.SELECT or el.tag is Tag.DATE_PICKER:
        body.append(_rect(box, style))
        if el.text:
            font_px = el.typography.font_px if el.typography else _fallback_font(el)
            body.append(_text(box.left + 8, box.top + box.height / 2 + 0.35 * font_px, el.text, font_px, style))
        ax = box.right - 28
        ay = box.top + box.height / 2 - 5
        body.append(
            f'<path d="M{ax} {_fmt(ay)}l8 10l8 -10" fill="none" stroke={quoteattr(style.ink)} '
            f'stroke-width="{style.stroke_px}" />'
        )
    else:  # Paragraph
        body.extend(_text_block(el, style))
    content = "".join(body)
    return f'<g data-id={quoteattr(el.id)} data-tag="{el.tag.value}">{content}</g>'


def _centered_text_copy(el: WireframeElement) -> WireframeElement:
    """Buttons center their label regardless of the plan alignment."""
    if el.typography is None or el.typography.alignment is Alignment.CENTER:
        return el
    from dataclasses import replace

    copy = WireframeElement(
        id=el.id, tag=el.tag, box=el.box, text=el.text, alt_text=el.alt_text,
        icon=el.icon, font_class=el.font_class,
    )
    copy.typography = replace(el.typography, alignment=Alignment.CENTER)
    return copy


def render_svg(doc: WireframeDocument, style: RenderStyle | None = None, scale: float = 1.0) -> str:
    """Render a document to SVG text; identical inputs give identical bytes."""
    style = style or RenderStyle()
    from .beautify.icons import load_lexicon

    lexicon_glyphs = {entry.icon_id: entry.glyph for entry in load_lexicon()}
    width = _fmt(doc.screen_width * scale)
    height = _fmt(doc.screen_height * scale)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {doc.screen_width} {doc.screen_height}">',
        f'<rect x="0" y="0" width="{doc.screen_width}" height="{doc.screen_height}" '
        f'fill={quoteattr(_gray(255))} stroke={quoteattr(style.ink)} stroke-width="{style.stroke_px}" />',
    ]
    for el in doc.walk():
        lines.append(_render_element(el, style, lexicon_glyphs))
    lines.append("</svg>")
    return "\n".join(lines)


def out_of_canvas_ids(doc: WireframeDocument) -> list[str]:
    """Ids of elements whose boxes extend past the canvas (expected empty
    after beautification)."""
    flagged = []
    for el in doc.walk():
        b = el.box
        if b.left < 0 or b.top < 0 or b.right > doc.screen_width or b.bottom > doc.screen_height:
            flagged.append(el.id)
    return flagged
