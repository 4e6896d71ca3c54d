"""wiregen: view hierarchies in, mid-fidelity wireframes out.

The pipeline stages, in order of the data flow:

- hierarchy: Rico-format view-hierarchy JSON -> normalized UI tree
- dsl: UI tree <-> constrained absolute-position markup
- corpus: screen selection and fine-tuning JSONL emission
- generation: prompting modes and completion backends (remote + mock)
- beautify: icon resolution, typography optimization, lint/repair
- render: deterministic monochrome SVG
- service / cli: HTTP and command-line surfaces over all of the above
"""

from .beautify import beautify
from .dsl import WireframeDocument, WireframeElement, emit_dsl, parse_dsl, serialize, validate
from .hierarchy import UiNode, UiTree, normalize, parse_hierarchy
from .render import render_svg

__version__ = "0.1.0"

__all__ = [
    "UiNode",
    "UiTree",
    "WireframeDocument",
    "WireframeElement",
    "beautify",
    "emit_dsl",
    "normalize",
    "parse_dsl",
    "parse_hierarchy",
    "render_svg",
    "serialize",
    "validate",
    "__version__",
]
