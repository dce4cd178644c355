"""Inference gateway: the only module that talks to the model server.

Speaks the de-facto local-inference streaming protocol (JSON lines over
HTTP); every path and field name is isolated in ``ProtocolAdapter`` so an
alternative chat-completions dialect is an adapter swap, not a rewrite.

Caller aborts are native task cancellations: cancelling a ``stream_chat``
call tears down the upstream connection.
"""

from __future__ import annotations

import base64
import json
import logging
from dataclasses import dataclass
from typing import Callable, Sequence

import anyio
import httpx

from .errors import (
    DimensionMismatch,
    DuplicateModelId,
    ImageTooLarge,
    ModelUnavailable,
    StreamStalled,
    UnknownModel,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ModelSpec:
    """Registry entry for one backend model.

    ``context_budget`` is in characters (tokens approximated as chars/4).
    ``embedding_dim`` is set only for embedding models.
    """

    model_id: str
    display_name: str
    context_budget: int
    supports_deep_thinking: bool = False
    deep_thinking_marker: str | None = None
    supports_vision: bool = False
    embedding_dim: int | None = None

    def __post_init__(self) -> None:
        if self.context_budget <= 0:
            raise ValueError("context_budget must be positive")
        if self.supports_deep_thinking != (self.deep_thinking_marker is not None):
            raise ValueError("deep_thinking_marker must be present iff supported")
        if self.embedding_dim is not None and self.embedding_dim <= 0:
            raise ValueError("embedding_dim must be positive")

    @property
    def is_chat_model(self) -> bool:
        """Usable as a verification model (not an embedding or OCR backend)."""
        return self.embedding_dim is None and not self.supports_vision

    @classmethod
    def from_dict(cls, raw: dict) -> "ModelSpec":
        return cls(
            model_id=raw["model_id"],
            display_name=raw.get("display_name", raw["model_id"]),
            context_budget=int(raw["context_budget"]),
            supports_deep_thinking=bool(raw.get("supports_deep_thinking", False)),
            deep_thinking_marker=raw.get("deep_thinking_marker"),
            supports_vision=bool(raw.get("supports_vision", False)),
            embedding_dim=raw.get("embedding_dim"),
        )

    def public_fields(self) -> dict:
        """Projection for the models endpoint; markers stay internal."""
        return {
            "model_id": self.model_id,
            "display_name": self.display_name,
            "context_budget": self.context_budget,
            "supports_deep_thinking": self.supports_deep_thinking,
        }


@dataclass(frozen=True)
class StreamChunk:
    text_delta: str
    done: bool


class ModelRegistry:
    """Configured model specs, in configuration order."""

    def __init__(self, specs: Sequence[ModelSpec]):
        self._specs: list[ModelSpec] = []
        seen: set[str] = set()
        for spec in specs:
            if spec.model_id in seen:
                raise DuplicateModelId(f"model_id {spec.model_id!r} configured twice")
            seen.add(spec.model_id)
            self._specs.append(spec)

    def list_models(self) -> list[ModelSpec]:
        """Chat-capable specs, the choices offered for verification."""
        return [s for s in self._specs if s.is_chat_model]

    def all_models(self) -> list[ModelSpec]:
        return list(self._specs)

    def get(self, model_id: str) -> ModelSpec:
        for spec in self._specs:
            if spec.model_id == model_id:
                return spec
        raise UnknownModel(f"model {model_id!r} is not registered")


class ProtocolAdapter:
    """Paths and field names of the JSON-lines chat protocol, in one place."""

    chat_path = "/api/chat"
    embed_path = "/api/embed"

    def chat_body(
        self,
        model_id: str,
        system_text: str,
        user_text: str,
        stream: bool,
        image_bytes: bytes | None = None,
    ) -> dict:
        user_message: dict = {"role": "user", "content": user_text}
        if image_bytes is not None:
            user_message["images"] = [base64.b64encode(image_bytes).decode("ascii")]
        messages = []
        if system_text:
            messages.append({"role": "system", "content": system_text})
        messages.append(user_message)
        return {"model": model_id, "messages": messages, "stream": stream}

    def parse_chat_line(self, line: str) -> StreamChunk | None:
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            logger.warning("skipping unparseable stream line")
            return None
        delta = (obj.get("message") or {}).get("content") or ""
        return StreamChunk(text_delta=delta, done=bool(obj.get("done")))

    def parse_chat_response(self, obj: dict) -> str:
        return (obj.get("message") or {}).get("content") or ""

    def embed_body(self, model_id: str, texts: list[str]) -> dict:
        return {"model": model_id, "input": texts}

    def parse_embed_response(self, obj: dict) -> list[list[float]]:
        return obj.get("embeddings") or []


class InferenceGateway:
    """Streaming chat, embeddings, and vision OCR against one base URL."""

    def __init__(
        self,
        registry: ModelRegistry,
        base_url: str,
        *,
        total_timeout_s: float = 300.0,
        stall_timeout_s: float = 60.0,
        connection_cap: int = 8,
        retry_attempts: int = 1,
        max_image_bytes: int = 10 * 1024 * 1024,
        bearer_token: str | None = None,
        adapter: ProtocolAdapter | None = None,
    ):
        self.registry = registry
        self._adapter = adapter or ProtocolAdapter()
        self._total_timeout_s = total_timeout_s
        self._retry_attempts = retry_attempts
        self._max_image_bytes = max_image_bytes
        headers = {"Authorization": f"Bearer {bearer_token}"} if bearer_token else {}
        self._client = httpx.AsyncClient(
            base_url=base_url,
            headers=headers,
            # The read timeout doubles as the inter-chunk stall timeout.
            timeout=httpx.Timeout(connect=10.0, read=stall_timeout_s, write=30.0, pool=10.0),
            limits=httpx.Limits(max_connections=connection_cap),
        )

    async def aclose(self) -> None:
        await self._client.aclose()

    async def __aenter__(self) -> "InferenceGateway":
        return self

    async def __aexit__(self, *exc) -> None:
        await self.aclose()

    async def stream_chat(
        self,
        model_id: str,
        system_text: str,
        user_text: str,
        on_chunk: Callable[[str], None],
    ) -> str:
        """Stream a chat completion, invoking ``on_chunk`` per text delta.

        Returns the concatenation of all deltas. Connect failures and 5xx
        raise ``ModelUnavailable`` (retried only while no chunk has been
        delivered); a stalled or over-budget stream raises ``StreamStalled``.
        """
        self.registry.get(model_id)
        body = self._adapter.chat_body(model_id, system_text, user_text, stream=True)

        parts: list[str] = []
        attempts = self._retry_attempts + 1
        for attempt in range(attempts):
            try:
                with anyio.fail_after(self._total_timeout_s):
                    async with self._client.stream(
                        "POST", self._adapter.chat_path, json=body
                    ) as response:
                        if response.status_code != 200:
                            await response.aread()
                            raise ModelUnavailable(
                                f"inference backend returned {response.status_code}"
                            )
                        async for line in response.aiter_lines():
                            if not line.strip():
                                continue
                            chunk = self._adapter.parse_chat_line(line)
                            if chunk is None:
                                continue
                            if chunk.text_delta:
                                parts.append(chunk.text_delta)
                                on_chunk(chunk.text_delta)
                            if chunk.done:
                                return "".join(parts)
                # Stream ended without a done marker: treat as an upstream failure.
                raise ModelUnavailable("stream closed before completion")
            except (httpx.ConnectError, httpx.ConnectTimeout) as exc:
                failure: Exception = ModelUnavailable(f"cannot reach inference backend: {exc}")
            except httpx.ReadTimeout as exc:
                raise StreamStalled("no chunk within the stall timeout") from exc
            except TimeoutError as exc:
                raise StreamStalled("stream exceeded the total timeout") from exc
            except (httpx.RemoteProtocolError, httpx.ReadError) as exc:
                failure = ModelUnavailable(f"stream aborted by backend: {exc}")
            except ModelUnavailable as exc:
                failure = exc
            # Retries never duplicate delivered chunks.
            if parts or attempt == attempts - 1:
                raise failure
            logger.warning("retrying after pre-stream failure: %s", failure)
        raise AssertionError("unreachable")

    async def embed(self, model_id: str, texts: list[str]) -> list[list[float]]:
        """One vector per input text, order-preserving, in a single request."""
        spec = self.registry.get(model_id)
        if spec.embedding_dim is None:
            raise ValueError(f"model {model_id!r} is not an embedding model")
        if not texts:
            raise ValueError("texts must be non-empty")
        try:
            response = await self._client.post(
                self._adapter.embed_path,
                json=self._adapter.embed_body(model_id, texts),
                timeout=self._total_timeout_s,
            )
        except httpx.HTTPError as exc:
            raise ModelUnavailable(f"embeddings request failed: {exc}") from exc
        if response.status_code != 200:
            raise ModelUnavailable(f"embeddings backend returned {response.status_code}")
        vectors = self._adapter.parse_embed_response(response.json())
        if len(vectors) != len(texts):
            raise DimensionMismatch(
                f"expected {len(texts)} vectors, backend returned {len(vectors)}"
            )
        for vec in vectors:
            if len(vec) != spec.embedding_dim:
                raise DimensionMismatch(
                    f"expected dimension {spec.embedding_dim}, got {len(vec)}"
                )
        return [list(map(float, vec)) for vec in vectors]

    async def ocr_via_vision(self, model_id: str, image_bytes: bytes, prompt: str) -> str:
        """Send a table image plus extraction prompt; return the raw model text."""
        spec = self.registry.get(model_id)
        if not spec.supports_vision:
            raise ValueError(f"model {model_id!r} does not support vision input")
        if not image_bytes:
            raise ValueError("image must be non-empty")
        if len(image_bytes) > self._max_image_bytes:
            raise ImageTooLarge(
                f"image is {len(image_bytes)} bytes, cap is {self._max_image_bytes}"
            )
        body = self._adapter.chat_body(model_id, "", prompt, stream=False, image_bytes=image_bytes)
        try:
            response = await self._client.post(
                self._adapter.chat_path, json=body, timeout=self._total_timeout_s
            )
        except httpx.HTTPError as exc:
            raise ModelUnavailable(f"vision request failed: {exc}") from exc
        if response.status_code != 200:
            raise ModelUnavailable(f"vision backend returned {response.status_code}")
        return self._adapter.parse_chat_response(response.json())
