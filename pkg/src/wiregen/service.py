"""Stateless HTTP API exposing the full pipeline.

POST /api/generate  description + generation options -> raw markup,
                    beautified markup, SVG, findings, report, request id
POST /api/beautify  user-edited markup -> beautified markup, SVG, findings
GET  /api/icons     the 10-entry icon lexicon
GET  /healthz       liveness probe

The app holds no per-request state; with the mock backend and a fixed seed,
identical requests produce identical payloads (modulo request_id).
"""

from __future__ import annotations

import logging
import os
import uuid

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .beautify import beautify
from .beautify.icons import load_lexicon
from .dsl import parse_dsl, serialize
from .errors import BackendError, PromptOverflow, Unparseable
from .generation import (
    BACKEND_URL_ENV,
    GenerationConfig,
    Mode,
    assemble_prompt,
    builtin_exemplars,
    generate,
    make_backend,
)
from .render import render_svg

log = logging.getLogger(__name__)


class GenerateOptions(BaseModel):
    mode: str = Mode.FINE_TUNED.value
    temperature: float = Field(default=0.65, ge=0.0, le=1.0)
    seed: int | None = None
    k: int = 2
    backend: str = "mock"


class GenerateRequest(BaseModel):
    description: str = ""
    config: GenerateOptions = GenerateOptions()


class BeautifyRequest(BaseModel):
    dsl: str = ""


def create_app(backend: str = "mock", static_dir: str | None = None) -> FastAPI:
    """Build the service app.

    backend is "mock" or a remote endpoint URL; requests asking for the
    "remote" backend use it (or the WIREGEN_BACKEND_URL environment
    variable).
    """
    app = FastAPI(title="wiregen", docs_url=None, redoc_url=None)

    def resolve_endpoint(choice: str) -> str:
        if choice == "mock":
            return ""
        url = backend if backend not in ("", "mock") else os.environ.get(BACKEND_URL_ENV, "")
        if not url:
            raise HTTPException(status_code=502, detail="no remote backend URL configured")
        return url

    def run_beautify(dsl_text: str) -> dict:
        try:
            document = parse_dsl(dsl_text)
        except Unparseable as exc:
            raise HTTPException(status_code=422, detail=f"markup not parseable: {exc}") from exc
        polished, report = beautify(document)
        return {
            "beautified_dsl": serialize(polished),
            "svg": render_svg(polished),
            "findings": [f.to_dict() for f in report.findings_fixed + report.findings_residual],
            "report": report.to_dict(),
        }

    @app.post("/api/generate")
    def api_generate(request: GenerateRequest) -> dict:
        if not request.description.strip():
            raise HTTPException(status_code=400, detail="description must not be empty")
        options = request.config
        try:
            cfg = GenerationConfig(
                mode=Mode(options.mode),
                k=options.k,
                temperature=options.temperature,
                seed=options.seed,
                endpoint_url=resolve_endpoint(options.backend),
            )
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        exemplars = builtin_exemplars() if cfg.mode is Mode.FEW_SHOT else ()
        try:
            prompt = assemble_prompt(request.description, cfg, exemplars)
            raw = generate(prompt, cfg, make_backend(cfg))
        except PromptOverflow as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        except BackendError as exc:
            log.warning("generation backend failed: %s", exc)
            raise HTTPException(status_code=502, detail=str(exc)) from exc
        try:
            payload = run_beautify(raw)
        except HTTPException:
            raise HTTPException(status_code=422, detail="generated markup was not parseable")
        payload["raw_dsl"] = raw
        payload["request_id"] = uuid.uuid4().hex
        return payload

    @app.post("/api/beautify")
    def api_beautify(request: BeautifyRequest) -> dict:
        return run_beautify(request.dsl)

    @app.get("/api/icons")
    def api_icons() -> list[dict]:
        return [
            {"icon_id": e.icon_id, "glyph": e.glyph, "semantics": list(e.semantics)}
            for e in load_lexicon()
        ]

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok"}

    if static_dir and os.path.isdir(static_dir):
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="studio")

    return app
