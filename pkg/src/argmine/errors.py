"""Exception hierarchy shared by the library, the CLI and the HTTP service.

Every error carries a stable machine-readable ``code`` (dot-separated,
``<area>.<problem>``). The service maps :class:`InputError` to HTTP 400 and
:class:`SemanticError` to HTTP 422; the CLI maps any :class:`EngineError`
to exit code 1.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all argmine errors."""

    code = "engine.error"

    def __init__(self, message: str, *, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code

    @property
    def message(self) -> str:
        return str(self)


class InputError(EngineError):
    """The request or argument was malformed (HTTP 400)."""

    code = "input.invalid"


class SemanticError(EngineError):
    """The input parsed but cannot be processed as asked (HTTP 422)."""

    code = "semantic.invalid"
