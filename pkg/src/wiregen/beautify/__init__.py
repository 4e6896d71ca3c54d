"""Beautification pipeline: icons, then typography, then lint/repair.

The pipeline never mutates its input document; it returns a polished copy
together with a report of what was done (icons resolved, typography plans,
flaws fixed and flaws still standing).
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from typing import Sequence

from ..dsl import Tag, WireframeDocument
from .icons import IconEntry, glyph_for, load_lexicon, resolve_icon
from .lint import LintFinding, RepairResult, lint, repair
from .typography import TypographyPlan, optimize_typography

__all__ = [
    "BeautifyReport",
    "beautify",
    "lint",
    "repair",
    "resolve_icon",
    "optimize_typography",
    "load_lexicon",
    "LintFinding",
    "RepairResult",
    "TypographyPlan",
    "IconEntry",
]

_ICON_BEARING_TAGS = (Tag.IMAGE, Tag.VIDEO, Tag.BUTTON)


@dataclass(slots=True)
class BeautifyReport:
    icons_resolved: list[dict] = field(default_factory=list)
    typography: list[dict] = field(default_factory=list)
    findings_fixed: list[LintFinding] = field(default_factory=list)
    findings_residual: list[LintFinding] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "icons_resolved": list(self.icons_resolved),
            "typography": list(self.typography),
            "findings_fixed": [f.to_dict() for f in self.findings_fixed],
            "findings_residual": [f.to_dict() for f in self.findings_residual],
        }


def beautify(
    doc: WireframeDocument,
    lexicon: Sequence[IconEntry] | None = None,
) -> tuple[WireframeDocument, BeautifyReport]:
    """Polish a parsed document and report the transformations applied."""
    doc = copy.deepcopy(doc)
    lexicon = lexicon or load_lexicon()
    report = BeautifyReport()

    for el in doc.walk():
        if el.tag in _ICON_BEARING_TAGS and el.alt_text:
            icon = resolve_icon(el.alt_text, lexicon)
            if icon is not None:
                el.icon = icon
                report.icons_resolved.append(
                    {"element_id": el.id, "icon_id": icon, "glyph": glyph_for(icon, lexicon)}
                )

    for el in doc.walk():
        if el.text and el.box.width > 0 and el.box.height > 0:
            plan = optimize_typography(el.text, el.font_class, el.box)
            el.typography = plan
            report.typography.append(
                {
                    "element_id": el.id,
                    "lines": list(plan.lines),
                    "font_px": plan.font_px,
                    "alignment": plan.alignment.value,
                    "occupied_ratio": plan.occupied_ratio,
                }
            )

    initial = lint(doc)
    result = repair(doc, initial)
    residual_keys = {(f.kind, f.element_ids) for f in result.residual}
    report.findings_fixed = [f for f in initial if (f.kind, f.element_ids) not in residual_keys]
    report.findings_residual = result.residual
    return result.document, report
