"""Prompt assembly and completion backends (remote endpoint + offline mock).

The remote backend speaks the de-facto OpenAI-compatible chat-completions
JSON surface. The mock backend is a deterministic in-process stand-in that
recognizes a handful of design intents and instantiates parameterized
wireframe templates, so every pipeline stage can be exercised offline.
"""

from __future__ import annotations

import hashlib
import logging
import os
import threading
import time
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from random import Random
from typing import Callable, Protocol, Sequence

import requests

from .corpus import TrainingExample, estimate_tokens
from .dsl import FontClass, Rect, Tag, WireframeDocument, WireframeElement, serialize
from .errors import (
    BackendRejected,
    BackendUnreachable,
    EmptyCompletion,
    PromptOverflow,
)

log = logging.getLogger(__name__)

API_KEY_ENV = "WIREGEN_API_KEY"
BACKEND_URL_ENV = "WIREGEN_BACKEND_URL"

DEFAULT_TEMPERATURE = 0.65
MAX_COMPLETION_TOKENS = 4096
DEFAULT_STOP_SEQUENCE = "</html>"


class Mode(str, Enum):
    ZERO_SHOT = "zero-shot"
    FEW_SHOT = "few-shot"
    FINE_TUNED = "fine-tuned"


@dataclass(slots=True)
class GenerationConfig:
    mode: Mode = Mode.FINE_TUNED
    k: int = 2
    temperature: float = DEFAULT_TEMPERATURE
    max_tokens: int = MAX_COMPLETION_TOKENS
    stop_sequence: str = DEFAULT_STOP_SEQUENCE
    model_id: str = "gpt-3.5-turbo"
    endpoint_url: str = ""
    timeout_s: int = 60
    seed: int | None = None

    def __post_init__(self) -> None:
        self.mode = Mode(self.mode)
        if not 0.0 <= self.temperature <= 1.0:
            raise ValueError(f"temperature must be in [0, 1], got {self.temperature}")
        if not 0 < self.max_tokens <= MAX_COMPLETION_TOKENS:
            raise ValueError(f"max_tokens must be in (0, {MAX_COMPLETION_TOKENS}], got {self.max_tokens}")
        if self.mode is Mode.FEW_SHOT and self.k not in (1, 2):
            raise ValueError(f"few-shot k must be 1 or 2, got {self.k}")


@dataclass(frozen=True, slots=True)
class PromptText:
    text: str
    token_estimate: int


def instruction_header() -> str:
    """The pinned instruction header shared by every prompting mode."""
    return resources.files("wiregen.resources").joinpath("prompt_header.txt").read_text("utf-8").rstrip("\n")


def builtin_exemplars() -> list[TrainingExample]:
    """Small built-in description/wireframe pairs for few-shot prompting."""
    from .corpus import read_jsonl

    with resources.as_file(resources.files("wiregen.resources").joinpath("exemplars.jsonl")) as path:
        return read_jsonl(path)


def _pair(example: TrainingExample) -> str:
    return f"Description: {example.prompt}\nWireframe:\n{example.completion}\n\n"


def assemble_prompt(
    description: str,
    cfg: GenerationConfig,
    exemplars: Sequence[TrainingExample] = (),
) -> PromptText:
    """Build the prompt for the configured mode.

    Few-shot uses the first k exemplars, dropping the largest first should
    the assembled prompt exceed the token budget. Raises PromptOverflow when
    the bare description does not fit, and ValueError when few-shot lacks k
    exemplars.
    """
    header = instruction_header()
    tail = f"Description: {description}\nWireframe:\n"
    chosen: list[TrainingExample] = []
    if cfg.mode is Mode.FEW_SHOT:
        if len(exemplars) < cfg.k:
            raise ValueError(f"few-shot k={cfg.k} needs {cfg.k} exemplars, got {len(exemplars)}")
        chosen = list(exemplars[: cfg.k])

    def build(pairs: Sequence[TrainingExample]) -> str:
        return header + "\n\n" + "".join(_pair(p) for p in pairs) + tail

    text = build(chosen)
    while estimate_tokens(text) > cfg.max_tokens and chosen:
        largest = max(chosen, key=lambda e: len(e.completion) + len(e.prompt))
        chosen.remove(largest)
        text = build(chosen)
    estimate = estimate_tokens(text)
    if estimate > cfg.max_tokens:
        raise PromptOverflow(f"description alone estimates {estimate} tokens > {cfg.max_tokens}")
    return PromptText(text=text, token_estimate=estimate)


class Backend(Protocol):
    def complete(self, prompt: str, cfg: GenerationConfig) -> str:
        """Return raw completion text, stopping before the stop sequence."""
        ...


class MockBackend:
    """Deterministic offline backend: same (prompt, seed) -> same bytes."""

    def complete(self, prompt: str, cfg: GenerationConfig) -> str:
        document = mock_generate(prompt, cfg.seed)
        stop = cfg.stop_sequence
        if stop and document.endswith(stop):
            document = document[: -len(stop)]
        return document


class RemoteBackend:
    """OpenAI-compatible chat-completions client with bounded concurrency.

    Transient failures (connection errors, timeouts, 429 and 5xx statuses)
    are retried up to 3 times with exponential backoff; other non-2xx
    statuses are rejected immediately.
    """

    RETRIES = 3

    def __init__(
        self,
        endpoint_url: str,
        max_in_flight: int = 4,
        sleep: Callable[[float], None] = time.sleep,
        session: requests.Session | None = None,
    ):
        self.endpoint_url = endpoint_url
        self._semaphore = threading.Semaphore(max_in_flight)
        self._sleep = sleep
        self._session = session or requests.Session()

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        api_key = os.environ.get(API_KEY_ENV, "")
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        return headers

    def complete(self, prompt: str, cfg: GenerationConfig) -> str:
        payload = {
            "model": cfg.model_id,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": cfg.temperature,
            "max_tokens": cfg.max_tokens,
            "stop": [cfg.stop_sequence],
        }
        last_error: Exception | None = None
        with self._semaphore:
            for attempt in range(self.RETRIES):
                if attempt:
                    self._sleep(0.5 * 2 ** (attempt - 1))
                try:
                    response = self._session.post(
                        self.endpoint_url,
                        json=payload,
                        headers=self._headers(),
                        timeout=cfg.timeout_s,
                    )
                except requests.RequestException as exc:
                    log.warning("backend request failed (attempt %d): %s", attempt + 1, exc)
                    last_error = exc
                    continue
                if response.status_code == 429 or response.status_code >= 500:
                    log.warning("backend transient status %d (attempt %d)", response.status_code, attempt + 1)
                    last_error = BackendRejected(response.status_code, response.text)
                    continue
                if not 200 <= response.status_code < 300:
                    raise BackendRejected(response.status_code, response.text)
                return _extract_completion(response.json())
        if isinstance(last_error, BackendRejected):
            raise last_error
        raise BackendUnreachable(f"backend unreachable after {self.RETRIES} attempts: {last_error}")


def _extract_completion(payload: dict) -> str:
    try:
        choice = payload["choices"][0]
    except (KeyError, IndexError, TypeError) as exc:
        raise EmptyCompletion(f"no choices in backend response: {exc}") from exc
    message = choice.get("message")
    if isinstance(message, dict) and isinstance(message.get("content"), str):
        return message["content"]
    if isinstance(choice.get("text"), str):
        return choice["text"]
    raise EmptyCompletion("backend response carries no completion text")


def make_backend(cfg: GenerationConfig, max_in_flight: int = 4) -> Backend:
    if cfg.endpoint_url in ("", "mock"):
        return MockBackend()
    return RemoteBackend(cfg.endpoint_url, max_in_flight=max_in_flight)


def generate(prompt: PromptText, cfg: GenerationConfig, backend: Backend | None = None) -> str:
    """Run one completion and enforce the stop-sequence postcondition.

    The returned text is truncated at the first occurrence of the stop
    sequence with the stop sequence re-appended, so downstream consumers
    always see markup ending in </html>.
    """
    backend = backend or make_backend(cfg)
    raw = backend.complete(prompt.text, cfg)
    if not raw or not raw.strip():
        raise EmptyCompletion("backend produced empty text")
    cut = raw.find(cfg.stop_sequence)
    if cut >= 0:
        raw = raw[:cut]
    return raw + cfg.stop_sequence


# --- mock templates ---------------------------------------------------------

SCREEN_W, SCREEN_H = 1440, 2560
_MARGIN = 120
_FULL = SCREEN_W - 2 * _MARGIN


def _el(
    element_id: str,
    tag: Tag,
    box: Rect,
    text: str | None = None,
    alt: str | None = None,
) -> WireframeElement:
    el = WireframeElement(id=element_id, tag=tag, box=box, text=text, alt_text=alt)
    lowered = element_id.lower()
    if "subtitle" in lowered:
        el.font_class = FontClass.SUBTITLE
    elif "title" in lowered:
        el.font_class = FontClass.TITLE
    return el


def _topbar(title: str, icon_alt: str = "navigate up") -> list[WireframeElement]:
    return [
        _el("nav_icon", Tag.IMAGE, Rect(32, 96, 96, 96), alt=icon_alt),
        _el("screen_title", Tag.PARAGRAPH, Rect(176, 96, 1100, 96), text=title),
    ]


def _template_login(rng: Random) -> list[WireframeElement]:
    top = 560 + 20 * rng.randrange(0, 4)
    elements = _topbar("Sign In")
    elements += [
        _el("login_title", Tag.PARAGRAPH, Rect(_MARGIN, 320, _FULL, 140), text="Welcome back"),
        _el("username", Tag.TEXT_INPUT, Rect(_MARGIN, top, _FULL, 140), text="Username"),
        _el("password", Tag.TEXT_INPUT, Rect(_MARGIN, top + 200, _FULL, 140), text="Password"),
        _el("login_button", Tag.BUTTON, Rect(_MARGIN, top + 420, _FULL, 150), text="Log in"),
    ]
    if rng.random() < 0.7:
        elements.append(
            _el("google_button", Tag.BUTTON, Rect(_MARGIN, top + 640, _FULL, 150), text="Sign in with Google")
        )
    elements.append(
        _el("forgot_subtitle", Tag.PARAGRAPH, Rect(_MARGIN, top + 860, _FULL, 80), text="Forgot your password?")
    )
    return elements


def _template_search(rng: Random) -> list[WireframeElement]:
    elements = [
        _el("search_icon", Tag.IMAGE, Rect(32, 96, 96, 96), alt="search"),
        _el("search_input", Tag.TEXT_INPUT, Rect(176, 96, 1200, 96), text="Search"),
    ]
    rows = 3 + rng.randrange(0, 3)
    for i in range(rows):
        y = 320 + i * 260
        elements.append(_el(f"result_{i + 1}_title", Tag.PARAGRAPH, Rect(_MARGIN, y, _FULL, 90), text=f"Result {i + 1}"))
        elements.append(
            _el(f"result_{i + 1}_subtitle", Tag.PARAGRAPH, Rect(_MARGIN, y + 110, _FULL, 70), text="Nearby and recommended")
        )
    elements.append(_el("filter_button", Tag.BUTTON, Rect(_MARGIN, 320 + rows * 260, 560, 140), text="Filters"))
    return elements


def _template_settings(rng: Random) -> list[WireframeElement]:
    elements = _topbar("Settings")
    rows = [
        ("account", "Account", "Profile, security and sign-in options"),
        ("notifications", "Notifications", "Choose which alerts you receive"),
        ("display", "Display", "Adjust brightness and layout density"),
        ("storage", "Storage", "Manage downloads and cached data"),
    ]
    count = 3 + rng.randrange(0, 2)
    y = 320
    for key, label, blurb in rows[:count]:
        elements.append(_el(f"{key}_title", Tag.PARAGRAPH, Rect(_MARGIN, y, _FULL, 90), text=label))
        elements.append(_el(f"{key}_subtitle", Tag.PARAGRAPH, Rect(_MARGIN, y + 100, _FULL, 70), text=blurb))
        y += 260
    elements.append(_el("dark_mode", Tag.CHECKBOX, Rect(_MARGIN, y, _FULL, 110), text="Dark mode"))
    elements.append(_el("auto_sync", Tag.CHECKBOX, Rect(_MARGIN, y + 160, _FULL, 110), text="Sync automatically"))
    return elements


def _template_music(rng: Random) -> list[WireframeElement]:
    elements = _topbar("My Music", icon_alt="menu")
    genres = ["Pop", "Rock", "Jazz", "Classical", "Hip hop"]
    count = 3 + rng.randrange(0, 3)
    y = 320
    for i, genre in enumerate(genres[:count]):
        elements.append(_el(f"genre_{i + 1}", Tag.BUTTON, Rect(_MARGIN, y, 640, 130), text=genre))
        y += 190
    elements.append(_el("now_playing_title", Tag.PARAGRAPH, Rect(_MARGIN, y + 60, _FULL, 90), text="Now playing"))
    elements.append(_el("track_art", Tag.IMAGE, Rect(_MARGIN, y + 180, 420, 420), alt="album art"))
    elements.append(_el("like_icon", Tag.IMAGE, Rect(600, y + 180, 96, 96), alt="favourite"))
    elements.append(_el("play_button", Tag.BUTTON, Rect(600, y + 320, 500, 140), text="Play"))
    return elements


def _template_flight(rng: Random) -> list[WireframeElement]:
    elements = _topbar("Book a Flight")
    y = 320 + 20 * rng.randrange(0, 3)
    elements += [
        _el("flight_title", Tag.PARAGRAPH, Rect(_MARGIN, y, _FULL, 120), text="Where to?"),
        _el("departure", Tag.TEXT_INPUT, Rect(_MARGIN, y + 180, _FULL, 130), text="Departure"),
        _el("arrival", Tag.TEXT_INPUT, Rect(_MARGIN, y + 370, _FULL, 130), text="Arrival"),
        _el("depart_date", Tag.DATE_PICKER, Rect(_MARGIN, y + 560, 560, 130), text="2024-07-01"),
        _el("passengers", Tag.SELECT, Rect(760, y + 560, 560, 130), text="Passengers"),
        _el("oneway", Tag.RADIO, Rect(_MARGIN, y + 760, 560, 110), text="One way"),
        _el("search_button", Tag.BUTTON, Rect(_MARGIN, y + 940, _FULL, 150), text="Search flights"),
    ]
    return elements


def _template_generic(rng: Random) -> list[WireframeElement]:
    y = 320 + 20 * rng.randrange(0, 4)
    return _topbar("Overview") + [
        _el("body_text", Tag.PARAGRAPH, Rect(_MARGIN, y, _FULL, 160), text="A short summary of this screen"),
        _el("hero_image", Tag.IMAGE, Rect(_MARGIN, y + 220, _FULL, 620), alt="preview"),
        _el("primary_button", Tag.BUTTON, Rect(_MARGIN, y + 900, _FULL, 150), text="Continue"),
    ]


_TEMPLATES = [
    ("login", _template_login),
    ("search", _template_search),
    ("settings", _template_settings),
    ("music", _template_music),
    ("flight", _template_flight),
]


def mock_generate(prompt: str, seed: int | None = None) -> str:
    """Deterministic template-based generation; always parseable markup.

    Keyword intents (login, search, settings, music, flight) map to
    parameterized page templates; anything else yields a generic page. The
    seed perturbs layout parameters, never validity.
    """
    digest = hashlib.sha256(f"{seed}:{prompt}".encode("utf-8")).hexdigest()
    rng = Random(int(digest[:16], 16))
    lowered = prompt.lower()
    builder = _template_generic
    for keyword, candidate in _TEMPLATES:
        if keyword in lowered:
            builder = candidate
            break
    doc = WireframeDocument(screen_width=SCREEN_W, screen_height=SCREEN_H, roots=builder(rng))
    return serialize(doc)
