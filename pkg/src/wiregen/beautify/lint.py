"""Detect and repair the three wireframe design flaws.

Occlusion: two unrelated (non-ancestor) elements overlap with positive area
and at least one of them carries text. Duplication: two childless elements
share a tag and normalized text and their boxes overlap at IoU >= 0.7.
Out-of-bound: a box extends past the screen rect. A pair reported as a
duplication is not additionally reported as an occlusion.

Repair rules mirror the flaw kinds one-to-one: occluded pairs gain a margin
by moving the later element (down, else right, else shrinking it into free
space); duplicates keep the first element in document order; out-of-bound
boxes are clamped to the screen. Repairs run to a fixpoint with an
iteration cap; anything still flagged afterwards is reported, never
silently dropped.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field
from enum import Enum

from ..dsl import WireframeDocument, WireframeElement
from ..geometry import Rect, clamp_rect, intersection, iou

DUPLICATION_IOU_THRESHOLD = 0.7
OCCLUSION_MARGIN_PX = 8
MAX_REPAIR_ITERATIONS = 10


class FlawKind(str, Enum):
    OCCLUSION = "occlusion"
    DUPLICATION = "duplication"
    OUT_OF_BOUND = "out_of_bound"


class RepairAction(str, Enum):
    ADD_MARGIN = "add_margin"
    REMOVE_DUPLICATE = "remove_duplicate"
    TRIM_BOUNDS = "trim_bounds"


_REPAIR_FOR_KIND = {
    FlawKind.OCCLUSION: RepairAction.ADD_MARGIN,
    FlawKind.DUPLICATION: RepairAction.REMOVE_DUPLICATE,
    FlawKind.OUT_OF_BOUND: RepairAction.TRIM_BOUNDS,
}

_KIND_ORDER = {FlawKind.OCCLUSION: 0, FlawKind.DUPLICATION: 1, FlawKind.OUT_OF_BOUND: 2}


@dataclass(frozen=True, slots=True)
class LintFinding:
    kind: FlawKind
    element_ids: tuple[str, ...]
    detail: str

    @property
    def repair(self) -> RepairAction:
        return _REPAIR_FOR_KIND[self.kind]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "element_ids": list(self.element_ids),
            "detail": self.detail,
            "repair": self.repair.value,
        }


def _normalized_text(el: WireframeElement) -> str:
    return " ".join((el.text or el.alt_text or "").lower().split())


def _ancestor_map(doc: WireframeDocument) -> dict[str, set[str]]:
    ancestors: dict[str, set[str]] = {}

    def visit(el: WireframeElement, path: set[str]) -> None:
        ancestors[el.id] = set(path)
        child_path = path | {el.id}
        for child in el.children:
            visit(child, child_path)

    for root in doc.roots:
        visit(root, set())
    return ancestors


def lint(doc: WireframeDocument) -> list[LintFinding]:
    """Report all flaws, sorted by (kind, document order of first element)."""
    elements = list(doc.walk())
    position = {el.id: i for i, el in enumerate(elements)}
    ancestors = _ancestor_map(doc)
    findings: list[LintFinding] = []

    for el in elements:
        b = el.box
        if b.left < 0 or b.top < 0 or b.right > doc.screen_width or b.bottom > doc.screen_height:
            findings.append(
                LintFinding(
                    FlawKind.OUT_OF_BOUND,
                    (el.id,),
                    f"box ({b.left},{b.top},{b.width},{b.height}) exceeds "
                    f"{doc.screen_width}x{doc.screen_height} screen",
                )
            )

    for i, a in enumerate(elements):
        for b in elements[i + 1 :]:
            if a.id in ancestors[b.id] or b.id in ancestors[a.id]:
                continue
            duplicated = (
                not a.children
                and not b.children
                and a.tag is b.tag
                and _normalized_text(a) == _normalized_text(b)
                and iou(a.box, b.box) >= DUPLICATION_IOU_THRESHOLD
            )
            if duplicated:
                findings.append(
                    LintFinding(
                        FlawKind.DUPLICATION,
                        (a.id, b.id),
                        f"same {a.tag.value} with matching text at IoU >= {DUPLICATION_IOU_THRESHOLD}",
                    )
                )
                continue
            if intersection(a.box, b.box).area > 0 and (a.text or b.text):
                findings.append(
                    LintFinding(FlawKind.OCCLUSION, (a.id, b.id), "boxes overlap and text is covered")
                )

    findings.sort(key=lambda f: (_KIND_ORDER[f.kind], position.get(f.element_ids[0], 0)))
    return findings


@dataclass(slots=True)
class RepairResult:
    document: WireframeDocument
    residual: list[LintFinding] = field(default_factory=list)
    iterations: int = 0


def _remove_element(doc: WireframeDocument, element_id: str) -> bool:
    def prune(children: list[WireframeElement]) -> bool:
        for i, el in enumerate(children):
            if el.id == element_id:
                del children[i]
                return True
            if prune(el.children):
                return True
        return False

    return prune(doc.roots)


def _shift_subtree(el: WireframeElement, dx: int, dy: int) -> None:
    for node in el.walk():
        node.box = node.box.moved(dx, dy)


def _in_bounds(box: Rect, doc: WireframeDocument) -> bool:
    return box.left >= 0 and box.top >= 0 and box.right <= doc.screen_width and box.bottom <= doc.screen_height


def _largest_free_sliver(box: Rect, blocker: Rect) -> Rect | None:
    """Largest sub-rect of box that does not touch blocker, or None."""
    inter = intersection(box, blocker)
    if inter.area == 0:
        return box
    candidates = [
        Rect(box.left, inter.bottom, box.width, box.bottom - inter.bottom),   # below
        Rect(inter.right, box.top, box.right - inter.right, box.height),      # right
        Rect(box.left, box.top, box.width, inter.top - box.top),             # above
        Rect(box.left, box.top, inter.left - box.left, box.height),          # left
    ]
    best = max(candidates, key=lambda r: r.area)
    return best if best.area > 0 else None


def _repair_occlusion(doc: WireframeDocument, first: WireframeElement, second: WireframeElement) -> bool:
    """Separate an occluded pair by adjusting the later element; returns
    whether anything changed.

    The down/right shifts clear the earlier element entirely plus a margin;
    for the common partial overlap this equals shifting by overlap size +
    margin, and for containment it resolves in one step instead of inching.
    """
    inter = intersection(first.box, second.box)
    if inter.area == 0:
        return False
    dy = first.box.bottom + OCCLUSION_MARGIN_PX - second.box.top
    if _in_bounds(second.box.moved(0, dy), doc):
        _shift_subtree(second, 0, dy)
        return True
    dx = first.box.right + OCCLUSION_MARGIN_PX - second.box.left
    if _in_bounds(second.box.moved(dx, 0), doc):
        _shift_subtree(second, dx, 0)
        return True
    sliver = _largest_free_sliver(second.box, first.box)
    if sliver is not None and sliver != second.box:
        second.box = sliver
        return True
    return False


def apply_repairs(doc: WireframeDocument, findings: list[LintFinding]) -> bool:
    """Apply one pass of repairs in finding order; returns whether the
    document changed. Geometry is re-checked against the current state, so
    stale findings degrade to no-ops."""
    changed = False
    for finding in findings:
        if finding.kind is FlawKind.DUPLICATION:
            survivor_id, *rest = finding.element_ids
            if doc.find(survivor_id) is None:
                continue
            for dup_id in rest:
                if doc.find(dup_id) is not None and _remove_element(doc, dup_id):
                    changed = True
        elif finding.kind is FlawKind.OUT_OF_BOUND:
            el = doc.find(finding.element_ids[0])
            if el is None:
                continue
            clamped = clamp_rect(el.box, doc.screen_width, doc.screen_height)
            if clamped != el.box:
                el.box = clamped
                changed = True
        else:
            first = doc.find(finding.element_ids[0])
            second = doc.find(finding.element_ids[1])
            if first is None or second is None:
                continue
            if _repair_occlusion(doc, first, second):
                changed = True
    return changed


def repair(
    doc: WireframeDocument,
    findings: list[LintFinding] | None = None,
    max_iterations: int = MAX_REPAIR_ITERATIONS,
) -> RepairResult:
    """Repair flaws to a fixpoint (or the iteration cap) on a copy of doc.

    Stops early when an iteration cannot change the document; whatever lint
    still reports at exit is returned as the residual.
    """
    doc = copy.deepcopy(doc)
    current = findings if findings is not None else lint(doc)
    iterations = 0
    while current and iterations < max_iterations:
        iterations += 1
        if not apply_repairs(doc, current):
            break
        current = lint(doc)
    return RepairResult(document=doc, residual=current, iterations=iterations)
