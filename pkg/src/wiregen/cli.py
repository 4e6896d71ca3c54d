"""Command-line entry point wiring every pipeline stage.

Subcommands: convert, corpus, generate, beautify, lint, render, serve.
Exit codes: 0 success, 1 input error (bad flags, unreadable or malformed
input), 2 backend error. All machine-readable output is JSON; nothing ever
prompts interactively.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .beautify import beautify
from .beautify.lint import lint
from .corpus import (
    CorpusConfig,
    build_examples,
    emit_finetune_manifest,
    emit_jsonl,
    load_index,
    read_jsonl,
    select_samples,
)
from .dsl import emit_dsl, parse_dsl, serialize
from .errors import BackendError, WiregenError
from .generation import (
    BACKEND_URL_ENV,
    GenerationConfig,
    Mode,
    assemble_prompt,
    builtin_exemplars,
    generate,
)
from .hierarchy import DEFAULT_SCREEN_DIMS, normalize, parse_hierarchy
from .render import RenderStyle, render_svg

log = logging.getLogger("wiregen")


class _Parser(argparse.ArgumentParser):
    """argparse that exits 1 (not 2) on usage errors, per the CLI contract."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _Parser:
    parser = _Parser(prog="wiregen", description=__doc__)
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    parser.add_argument("--seed", type=int, default=None, help="global random seed")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("convert", help="view-hierarchy JSON -> wireframe markup")
    p.add_argument("--input", required=True, help="Rico-format hierarchy JSON file")
    p.add_argument("--out", required=True, help="output markup file")
    p.add_argument("--width", type=int, default=DEFAULT_SCREEN_DIMS[0])
    p.add_argument("--height", type=int, default=DEFAULT_SCREEN_DIMS[1])

    p = sub.add_parser("corpus", help="build fine-tuning JSONL from a screen index")
    p.add_argument("--rico-dir", required=True, help="directory of {screen_id}.json files")
    p.add_argument("--descriptions", required=True, help="CSV: screen_id,app_id,category,description")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="selection seed")
    p.add_argument("--out", required=True, help="training JSONL path")
    p.add_argument("--holdout", help="holdout JSONL path")
    p.add_argument("--manifest", help="fine-tune job manifest JSON path")
    p.add_argument("--holdout-apps-per-category", type=int, default=2)
    p.add_argument("--max-tokens", type=int, default=4096)
    p.add_argument("--workers", type=int, default=4)

    p = sub.add_parser("generate", help="generate markup from a design-intent description")
    p.add_argument("--prompt", required=True)
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.FINE_TUNED.value)
    p.add_argument("--k", type=int, default=2, help="few-shot exemplar count (1 or 2)")
    p.add_argument("--temperature", type=float, default=0.65)
    p.add_argument("--backend", default="mock", help='"mock" or a completion endpoint URL')
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="mock generation seed")
    p.add_argument("--exemplars", help="JSONL of few-shot exemplars (default: built-in)")
    p.add_argument("--out", required=True, help="raw markup output path")
    p.add_argument("--beautify", action="store_true", help="also write <out>.beautified.html")
    p.add_argument("--render", action="store_true", help="also write <out>.svg")

    p = sub.add_parser("beautify", help="polish raw markup")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--report", help="write the beautify report JSON here")

    p = sub.add_parser("lint", help="report design flaws in markup")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--json", action="store_true", help="machine-readable findings")

    p = sub.add_parser("render", help="render markup to SVG")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--scale", type=float, default=1.0)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--backend", default="mock", help='"mock" or a completion endpoint URL')
    p.add_argument("--static", help="directory of built studio UI assets")

    return parser


def _cmd_convert(args) -> int:
    raw = Path(args.input).read_text(encoding="utf-8")
    tree = normalize(parse_hierarchy(raw, (args.width, args.height)))
    Path(args.out).write_text(emit_dsl(tree), encoding="utf-8")
    log.info("wrote %s", args.out)
    return 0


def _cmd_corpus(args) -> int:
    cfg = CorpusConfig(
        n_samples=args.n,
        seed=args.seed if args.seed is not None else 0,
        max_tokens=args.max_tokens,
        holdout_apps_per_category=args.holdout_apps_per_category,
    )
    index = load_index(args.descriptions, args.rico_dir)
    selection = select_samples(index, cfg)
    if selection.shortfall:
        log.warning("selection fell short by %d screens", selection.shortfall)
    result = build_examples(selection.train, cfg, workers=args.workers)
    count = emit_jsonl(result.examples, args.out)
    print(
        f"train: {count} examples -> {args.out} "
        f"(oversize skipped: {len(result.skipped_oversize)}, failed: {len(result.failed)})"
    )
    if args.holdout:
        holdout_result = build_examples(selection.holdout, cfg, workers=args.workers)
        emit_jsonl(holdout_result.examples, args.holdout)
        print(f"holdout: {len(holdout_result.examples)} examples -> {args.holdout}")
    if args.manifest:
        payload = emit_finetune_manifest(args.manifest)
        print(f"manifest: {json.dumps(payload)} -> {args.manifest}")
    return 0


def _cmd_generate(args) -> int:
    if args.backend == "mock":
        endpoint = ""
    elif args.backend == "remote":
        endpoint = os.environ.get(BACKEND_URL_ENV, "")
    else:
        endpoint = args.backend
    cfg = GenerationConfig(
        mode=Mode(args.mode),
        k=args.k,
        temperature=args.temperature,
        endpoint_url=endpoint,
        seed=args.seed,
    )
    exemplars = ()
    if cfg.mode is Mode.FEW_SHOT:
        exemplars = read_jsonl(args.exemplars) if args.exemplars else builtin_exemplars()
    prompt = assemble_prompt(args.prompt, cfg, exemplars)
    raw = generate(prompt, cfg)
    out = Path(args.out)
    out.write_text(raw, encoding="utf-8")
    log.info("wrote %s", out)
    if args.beautify or args.render:
        document, report = beautify(parse_dsl(raw))
        if args.beautify:
            clean_path = out.with_suffix(".beautified.html")
            clean_path.write_text(serialize(document), encoding="utf-8")
            log.info("wrote %s", clean_path)
        if args.render:
            svg_path = out.with_suffix(".svg")
            svg_path.write_text(render_svg(document), encoding="utf-8")
            log.info("wrote %s", svg_path)
    return 0


def _cmd_beautify(args) -> int:
    document = parse_dsl(Path(args.infile).read_text(encoding="utf-8"))
    polished, report = beautify(document)
    Path(args.out).write_text(serialize(polished), encoding="utf-8")
    if args.report:
        Path(args.report).write_text(json.dumps(report.to_dict(), indent=2), encoding="utf-8")
    print(
        f"icons: {len(report.icons_resolved)}, typography plans: {len(report.typography)}, "
        f"fixed: {len(report.findings_fixed)}, residual: {len(report.findings_residual)}"
    )
    return 0


def _cmd_lint(args) -> int:
    document = parse_dsl(Path(args.infile).read_text(encoding="utf-8"))
    findings = lint(document)
    if args.json:
        print(json.dumps([f.to_dict() for f in findings], indent=2))
    elif not findings:
        print("no findings")
    else:
        for finding in findings:
            print(f"{finding.kind.value}: {', '.join(finding.element_ids)} ({finding.detail})")
    return 0


def _cmd_render(args) -> int:
    document = parse_dsl(Path(args.infile).read_text(encoding="utf-8"))
    Path(args.out).write_text(render_svg(document, RenderStyle(), scale=args.scale), encoding="utf-8")
    log.info("wrote %s", args.out)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(backend=args.backend, static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


_COMMANDS = {
    "convert": _cmd_convert,
    "corpus": _cmd_corpus,
    "generate": _cmd_generate,
    "beautify": _cmd_beautify,
    "lint": _cmd_lint,
    "render": _cmd_render,
    "serve": _cmd_serve,
}


def run(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return _COMMANDS[args.command](args)
    except BackendError as exc:
        print(f"backend error: {exc}", file=sys.stderr)
        return 2
    except (WiregenError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
