"""HTTP service: streaming verification, OCR, model and example listings.

Everything is handled in memory; no request data is ever written to disk or
logged. The verify endpoint streams server-sent events (``reasoning``,
``verdict``, ``error``, ``done``) so a client sees the model's reasoning as
it is generated.
"""

from __future__ import annotations

import json
import logging
import time
from contextlib import asynccontextmanager
from typing import AsyncIterator, Optional

from fastapi import FastAPI, File, Form, HTTPException, Request, UploadFile
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, StreamingResponse
from pydantic import BaseModel, Field, model_validator

from .config import AppConfig, load_config
from .errors import (
    EmptyTable,
    ImageTooLarge,
    ModelUnavailable,
    NoDelimiter,
    OcrFailed,
    StreamStalled,
    TableTooLarge,
    UnknownModel,
    UnsupportedImage,
)
from .examples import Example, load_bundled_examples
from .gateway import InferenceGateway, ModelRegistry
from .ocr import classical_recognizer, ingest_image, vision_recognizer
from .pipeline import Strategy, StreamEvent, VerificationJob, run_verification
from .prompts import PromptingTechnique, supported_languages
from .ratelimit import RateLimitPolicy, TokenBucketLimiter
from .render import TableFormat
from .retrieval import Granularity
from .table import inject_row_index, parse_table

logger = logging.getLogger("tablecheck.service")

SSE_HEADERS = {
    "Cache-Control": "no-store",
    "Connection": "keep-alive",
    "X-Accel-Buffering": "no",
}


class VerifyRequest(BaseModel):
    """Body of POST /api/verify; defaults are the best-performing setup."""

    table_csv: Optional[str] = None
    example_id: Optional[str] = None
    title: Optional[str] = None
    claim: str
    model_id: Optional[str] = None
    format: str = Field(default=TableFormat.NATURALIZED.value)
    technique: str = Field(default=PromptingTechnique.CHAIN_OF_THOUGHT.value)
    strategy: str = Field(default=Strategy.DIRECT.value)
    rag_granularity: Optional[str] = None
    rag_k: Optional[int] = None
    output_language: str = "en"
    deep_thinking: bool = False

    @model_validator(mode="after")
    def _check(self) -> "VerifyRequest":
        if (self.table_csv is None) == (self.example_id is None):
            raise ValueError("provide exactly one of table_csv or example_id")
        if not self.claim.strip():
            raise ValueError("claim must be non-empty")
        _parse_enum(TableFormat, self.format, "format")
        _parse_enum(PromptingTechnique, self.technique, "technique")
        _parse_enum(Strategy, self.strategy, "strategy")
        if self.rag_granularity is not None:
            _parse_enum(Granularity, self.rag_granularity, "rag_granularity")
        if self.rag_k is not None and self.rag_k < 1:
            raise ValueError("rag_k must be positive")
        if self.output_language not in supported_languages():
            raise ValueError(f"unsupported output_language {self.output_language!r}")
        return self


def _parse_enum(enum_cls, value: str, name: str):
    try:
        return enum_cls(value)
    except ValueError:
        allowed = ", ".join(e.value for e in enum_cls)
        raise ValueError(f"{name} must be one of: {allowed}") from None


def _sse_frame(event: StreamEvent) -> str:
    return f"event: {event.kind}\ndata: {json.dumps(event.payload, ensure_ascii=False)}\n\n"


class RequestLogMiddleware:
    """Log request shape (method, path, status, timing), never payloads."""

    def __init__(self, app):
        self.app = app

    async def __call__(self, scope, receive, send):
        if scope["type"] != "http":
            await self.app(scope, receive, send)
            return
        started = time.monotonic()
        status = {"code": 0}

        async def send_wrapper(message):
            if message["type"] == "http.response.start":
                status["code"] = message["status"]
            await send(message)

        try:
            await self.app(scope, receive, send_wrapper)
        finally:
            client = scope.get("client") or ("-",)
            logger.info(
                "request method=%s path=%s status=%s duration_ms=%.1f client=%s",
                scope.get("method", "-"),
                scope.get("path", "-"),
                status["code"],
                (time.monotonic() - started) * 1000,
                client[0],
            )


def create_app(
    config: AppConfig | None = None, gateway: InferenceGateway | None = None
) -> FastAPI:
    config = config or load_config()
    registry = ModelRegistry(config.models)
    gateway = gateway or InferenceGateway(
        registry,
        config.inference_base_url,
        total_timeout_s=config.total_timeout_s,
        stall_timeout_s=config.stall_timeout_s,
        connection_cap=config.connection_cap,
        retry_attempts=config.retry_attempts,
        max_image_bytes=config.max_upload_bytes,
        bearer_token=config.bearer_token,
    )
    limiter = TokenBucketLimiter(
        RateLimitPolicy(capacity=config.rate_capacity, window_s=config.rate_window_s)
    )
    examples = {ex.id: ex for ex in load_bundled_examples()}

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        await gateway.aclose()

    app = FastAPI(title="tablecheck", lifespan=lifespan)
    app.state.config = config
    app.state.gateway = gateway
    app.state.limiter = limiter
    app.state.examples = examples

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc: RequestValidationError):
        detail = [
            {"loc": [str(part) for part in err.get("loc", ())], "msg": str(err.get("msg", ""))}
            for err in exc.errors()
        ]
        return JSONResponse(status_code=400, content={"detail": detail})

    # Raw ASGI middleware: BaseHTTPMiddleware would re-stream the body and
    # stop client disconnects from cancelling the upstream model request.
    app.add_middleware(RequestLogMiddleware)

    def _client_key(request: Request) -> str:
        return request.client.host if request.client else "unknown"

    def _enforce_rate_limit(request: Request) -> None:
        allowed, retry_after = limiter.acquire(_client_key(request))
        if not allowed:
            raise HTTPException(
                status_code=429,
                detail="rate limit exceeded",
                headers={"Retry-After": str(retry_after)},
            )

    @app.get("/api/models")
    async def list_models():
        return [spec.public_fields() for spec in registry.list_models()]

    @app.get("/api/examples")
    async def list_examples():
        return [
            {"id": ex.id, "title": ex.title, "claim": ex.claim, "label": ex.gold_label}
            for ex in examples.values()
        ]

    @app.get("/api/examples/{example_id}")
    async def get_example(example_id: str):
        ex = examples.get(example_id)
        if ex is None:
            raise HTTPException(status_code=404, detail=f"unknown example {example_id!r}")
        return {
            "id": ex.id,
            "title": ex.title,
            "claim": ex.claim,
            "label": ex.gold_label,
            "table_csv": ex.table_csv,
            "source_page_url": ex.source_page_url,
        }

    @app.post("/api/verify")
    async def verify(body: VerifyRequest, request: Request):
        _enforce_rate_limit(request)

        if body.example_id is not None:
            ex: Example | None = examples.get(body.example_id)
            if ex is None:
                raise HTTPException(status_code=404, detail=f"unknown example {body.example_id!r}")
            table_csv, title = ex.table_csv, body.title or ex.title
        else:
            table_csv, title = body.table_csv, body.title

        model_id = body.model_id or config.default_model_id
        try:
            model = registry.get(model_id)
        except UnknownModel as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        if not model.is_chat_model:
            raise HTTPException(status_code=400, detail=f"{model_id!r} is not a chat model")
        if body.deep_thinking and not model.supports_deep_thinking:
            raise HTTPException(
                status_code=400, detail=f"{model_id!r} does not support deep thinking"
            )

        try:
            table = inject_row_index(parse_table(table_csv, title=title))
        except TableTooLarge as exc:
            raise HTTPException(status_code=413, detail=str(exc)) from exc
        except (EmptyTable, NoDelimiter) as exc:
            raise HTTPException(status_code=400, detail=f"table did not parse: {exc}") from exc

        granularity = (
            Granularity(body.rag_granularity) if body.rag_granularity else Granularity.ROW
        )
        job = VerificationJob(
            table=table,
            claim=body.claim.strip(),
            title=title,
            model_id=model_id,
            embedding_model_id=config.embedding_model_id,
            table_format=TableFormat(body.format),
            technique=PromptingTechnique(body.technique),
            strategy=Strategy(body.strategy),
            rag_granularity=granularity,
            rag_k=body.rag_k,
            output_language=body.output_language,
            deep_thinking=body.deep_thinking,
        )

        async def event_stream() -> AsyncIterator[str]:
            async for event in run_verification(job, gateway):
                yield _sse_frame(event)

        return StreamingResponse(
            event_stream(), media_type="text/event-stream", headers=SSE_HEADERS
        )

    @app.post("/api/ocr")
    async def ocr(
        request: Request,
        image: UploadFile = File(...),
        backend: str = Form("vision"),
        title: Optional[str] = Form(None),
    ):
        _enforce_rate_limit(request)
        if backend == "vision":
            recognize = vision_recognizer(gateway, config.vision_model_id)
        elif backend == "classical":
            recognize = classical_recognizer(config.classical_ocr_command)
        else:
            raise HTTPException(status_code=400, detail="backend must be 'vision' or 'classical'")

        payload = await image.read(config.max_upload_bytes + 1)
        try:
            result = await ingest_image(
                payload, recognize, max_bytes=config.max_upload_bytes, title=title
            )
        except ImageTooLarge as exc:
            raise HTTPException(status_code=413, detail=str(exc)) from exc
        except UnsupportedImage as exc:
            raise HTTPException(status_code=415, detail=str(exc)) from exc
        except (EmptyTable, NoDelimiter, TableTooLarge) as exc:
            raise HTTPException(status_code=422, detail=f"recognition unusable: {exc}") from exc
        except (OcrFailed, ModelUnavailable, StreamStalled) as exc:
            raise HTTPException(status_code=502, detail=str(exc)) from exc

        return {
            "csv_text": result.csv_text,
            "table": {
                "columns": list(result.table.columns),
                "rows": [list(r) for r in result.table.rows],
                "title": result.table.title,
            },
        }

    return app
