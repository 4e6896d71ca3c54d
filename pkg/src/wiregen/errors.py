"""Exception hierarchy shared by the whole toolkit.

Input-shaped failures (bad files, bad markup, bad flags) and backend-shaped
failures (unreachable endpoints, rejected requests) are kept in separate
branches so the CLI can map them to distinct exit codes.
"""

from __future__ import annotations


class WiregenError(Exception):
    """Base class for all toolkit errors."""


class MalformedInput(WiregenError):
    """A source view-hierarchy file is unusable (not JSON, no root, bad bounds)."""


class Unparseable(WiregenError):
    """Generated markup contains no recognizable element at all."""


class PromptOverflow(WiregenError):
    """The description alone does not fit the prompt token budget."""


class EmptyBox(WiregenError):
    """Typography was requested for a box with non-positive dimensions."""


class BackendError(WiregenError):
    """Base class for completion-backend failures."""


class BackendUnreachable(BackendError):
    """The endpoint could not be reached after retries."""


class BackendRejected(BackendError):
    """The endpoint answered with a non-2xx status."""

    def __init__(self, status: int, body: str = ""):
        super().__init__(f"backend rejected request with status {status}: {body[:200]}")
        self.status = status
        self.body = body


class EmptyCompletion(BackendError):
    """The endpoint answered 2xx but produced no text."""
