"""HTTP front end: versioned JSON endpoints over the shared handlers.

Every error response has the shape {"code", "message"}. Domain errors map
InputError -> 400 and SemanticError -> 422; malformed JSON bodies are 400
"body.parse" and schema violations 400 "body.schema". Authentication is
an x-api-key header compared in constant time against the configured key
list; with no keys configured the service runs open, which suits local
use behind the CLI.
"""

from __future__ import annotations

import hmac
import os
from contextlib import asynccontextmanager
from typing import Iterable

from fastapi import Depends, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from ..errors import InputError, SemanticError
from . import handlers
from .jobs import PENDING, JobStore, UnknownJobError
from .models import (
    ClusterRequest,
    IndexQueryRequest,
    KpaSubmitRequest,
    NarrativeRequest,
    RelatednessRequest,
    SentenceScoreRequest,
    ThemesRequest,
    TopicSentenceRequest,
    WikifyRequest,
)

DEFAULT_MAX_BODY_BYTES = 10 * 1024 * 1024
DEFAULT_MAX_COMMENTS = 100_000
KEYS_FILE_ENV = "DEBATER_KEYS_FILE"
PORT_ENV = "DEBATER_PORT"
DEFAULT_PORT = 8800

_STATUS_CODES = {
    400: "body.schema",
    404: "http.not-found",
    405: "http.method-not-allowed",
    413: "body.too-large",
    500: "http.internal",
}


def load_keys_file(path: str) -> list[str]:
    """One key per line; blank lines and #-comments are skipped."""
    keys: list[str] = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                keys.append(line)
    return keys


def _error_response(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"code": code, "message": message})


class _RequestRejected(Exception):
    def __init__(self, code: str, message: str):
        self.code = code
        self.message = message


def create_app(
    api_keys: Iterable[str] | None = None,
    *,
    job_store: JobStore | None = None,
    max_body_bytes: int = DEFAULT_MAX_BODY_BYTES,
    max_comments: int = DEFAULT_MAX_COMMENTS,
) -> FastAPI:
    if api_keys is None:
        keys_file = os.environ.get(KEYS_FILE_ENV)
        api_keys = load_keys_file(keys_file) if keys_file else []
    keys = list(api_keys)
    owns_store = job_store is None
    store = job_store if job_store is not None else JobStore()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        if owns_store:
            store.close()

    app = FastAPI(title="argmine service", version="1", lifespan=lifespan)
    app.state.job_store = store
    app.state.max_comments = max_comments

    async def guard(request: Request) -> None:
        body = await request.body()
        if len(body) > max_body_bytes:
            raise _RequestRejected("body.too-large", f"request body exceeds {max_body_bytes} bytes")
        if not keys:
            return
        offered = request.headers.get("x-api-key")
        if offered is None:
            raise _RequestRejected("auth.missing", "x-api-key header is required")
        ok = False
        for key in keys:
            # Constant-time comparison against every configured key.
            ok |= hmac.compare_digest(offered.encode(), key.encode())
        if not ok:
            raise _RequestRejected("auth.invalid", "the supplied API key is not recognized")

    @app.exception_handler(_RequestRejected)
    async def on_rejected(request: Request, exc: _RequestRejected) -> JSONResponse:
        status = 413 if exc.code == "body.too-large" else 401
        return _error_response(status, exc.code, exc.message)

    @app.exception_handler(InputError)
    async def on_input_error(request: Request, exc: InputError) -> JSONResponse:
        return _error_response(400, exc.code, str(exc))

    @app.exception_handler(SemanticError)
    async def on_semantic_error(request: Request, exc: SemanticError) -> JSONResponse:
        return _error_response(422, exc.code, str(exc))

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError) -> JSONResponse:
        for err in exc.errors():
            if err.get("type", "").startswith("json"):
                return _error_response(400, "body.parse", "request body is not valid JSON")
        first = exc.errors()[0] if exc.errors() else {}
        loc = ".".join(str(part) for part in first.get("loc", ()) if part != "body")
        msg = first.get("msg", "invalid request body")
        detail = f"{loc}: {msg}" if loc else msg
        return _error_response(400, "body.schema", detail)

    @app.exception_handler(StarletteHTTPException)
    async def on_http_error(request: Request, exc: StarletteHTTPException) -> JSONResponse:
        if isinstance(exc.detail, dict) and "code" in exc.detail:
            return _error_response(exc.status_code, exc.detail["code"], exc.detail["message"])
        code = _STATUS_CODES.get(exc.status_code, "http.error")
        return _error_response(exc.status_code, code, str(exc.detail))

    dep = [Depends(guard)]

    @app.post("/v1/wikify", dependencies=dep)
    async def wikify(req: WikifyRequest) -> dict:
        return handlers.handle_wikify(req)

    @app.post("/v1/relatedness", dependencies=dep)
    async def relatedness(req: RelatednessRequest) -> dict:
        return handlers.handle_relatedness(req)

    @app.post("/v1/cluster", dependencies=dep)
    async def cluster(req: ClusterRequest) -> dict:
        return handlers.handle_cluster(req)

    @app.post("/v1/themes", dependencies=dep)
    async def themes(req: ThemesRequest) -> dict:
        return handlers.handle_themes(req)

    @app.post("/v1/claim/score", dependencies=dep)
    async def claim_score(req: TopicSentenceRequest) -> dict:
        return handlers.handle_claim_score(req)

    @app.post("/v1/claim/boundaries", dependencies=dep)
    async def claim_boundaries(req: SentenceScoreRequest) -> dict:
        return handlers.handle_claim_boundaries(req)

    @app.post("/v1/evidence/score", dependencies=dep)
    async def evidence_score(req: TopicSentenceRequest) -> dict:
        return handlers.handle_evidence_score(req)

    @app.post("/v1/quality", dependencies=dep)
    async def quality(req: SentenceScoreRequest) -> dict:
        return handlers.handle_quality(req)

    @app.post("/v1/stance", dependencies=dep)
    async def stance(req: TopicSentenceRequest) -> dict:
        return handlers.handle_stance(req)

    @app.post("/v1/narrative", dependencies=dep)
    async def narrative(req: NarrativeRequest) -> dict:
        return handlers.handle_narrative(req)

    @app.post("/v1/index/query", dependencies=dep)
    async def index_query(req: IndexQueryRequest) -> dict:
        return handlers.handle_index_query(req)

    @app.post("/v1/kpa", dependencies=dep, status_code=202)
    async def kpa_submit(req: KpaSubmitRequest, request: Request) -> JSONResponse:
        if len(req.comments) > max_comments:
            return _error_response(
                413,
                "kpa.too-many-comments",
                f"{len(req.comments)} comments exceed the limit of {max_comments}",
            )
        idempotency_key = request.headers.get("x-idempotency-key")
        job_id = store.submit(lambda: handlers.handle_kpa(req), idempotency_key)
        response = JSONResponse(status_code=202, content={"job_id": job_id, "state": PENDING})
        if idempotency_key is not None:
            response.headers["x-idempotency-key"] = idempotency_key
        return response

    @app.get("/v1/kpa/jobs/{job_id}", dependencies=dep)
    async def kpa_poll(job_id: str) -> dict:
        try:
            job = store.get(job_id)
        except UnknownJobError:
            raise StarletteHTTPException(
                404, {"code": "job.unknown", "message": f"unknown job id {job_id!r}"}
            ) from None
        return job.to_payload()

    return app
