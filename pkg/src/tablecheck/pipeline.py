"""The verification pipeline shared by the HTTP service and the bench CLI.

One code path produces one event stream: reasoning deltas as they arrive
from the model, then a single verdict, then done; any failure becomes a
single error event followed by done. The service maps these events onto SSE
frames, the bench harness folds them into eval records.
"""

from __future__ import annotations

import asyncio
import logging
from dataclasses import dataclass
from enum import Enum
from typing import AsyncIterator

from .errors import TableCheckError
from .gateway import InferenceGateway
from .prompts import PromptingTechnique, PromptSpec, build_prompt
from .render import TableFormat, render
from .retrieval import (
    DEFAULT_TOP_K,
    Granularity,
    assemble_subtable,
    score_units,
    segment,
    select_top_k,
)
from .table import Table
from .verdict import Verdict, extract_verdict, finalize_verdict

logger = logging.getLogger(__name__)


class Strategy(Enum):
    DIRECT = "direct"
    RAG = "rag"


@dataclass(frozen=True)
class VerificationJob:
    """A fully resolved request: table parsed, row_index injected, ids checked."""

    table: Table
    claim: str
    title: str | None
    model_id: str
    embedding_model_id: str
    table_format: TableFormat = TableFormat.NATURALIZED
    technique: PromptingTechnique = PromptingTechnique.CHAIN_OF_THOUGHT
    strategy: Strategy = Strategy.DIRECT
    rag_granularity: Granularity = Granularity.ROW
    rag_k: int | None = None
    output_language: str = "en"
    deep_thinking: bool = False


@dataclass(frozen=True)
class StreamEvent:
    """One element of the verification stream."""

    kind: str  # "reasoning" | "verdict" | "error" | "done"
    payload: dict

    @classmethod
    def reasoning(cls, text: str) -> "StreamEvent":
        return cls("reasoning", {"text": text})

    @classmethod
    def verdict(cls, verdict: Verdict) -> "StreamEvent":
        return cls("verdict", verdict.to_dict())

    @classmethod
    def error(cls, code: str, message: str) -> "StreamEvent":
        return cls("error", {"code": code, "message": message})

    @classmethod
    def done(cls) -> "StreamEvent":
        return cls("done", {})


def _error_code(exc: Exception) -> str:
    name = type(exc).__name__
    out = [name[0].lower()]
    for ch in name[1:]:
        if ch.isupper():
            out.append("_")
        out.append(ch.lower())
    return "".join(out)


async def _prune_table(job: VerificationJob, gateway: InferenceGateway) -> Table:
    """RAG step: embed claim and fragments, keep the top-k, reassemble."""
    units = segment(job.table, job.rag_granularity)
    if not units:
        return job.table
    vectors = await gateway.embed(
        job.embedding_model_id, [job.claim] + [u.text for u in units]
    )
    claim_vec = vectors[0]
    for unit, vec in zip(units, vectors[1:]):
        unit.embedding = vec
    score_units(units, claim_vec)
    k = job.rag_k or DEFAULT_TOP_K[job.rag_granularity.value]
    selected = select_top_k(units, k)
    return assemble_subtable(job.table, selected)


async def run_verification(
    job: VerificationJob, gateway: InferenceGateway
) -> AsyncIterator[StreamEvent]:
    """Run the full pipeline, yielding events as the model streams.

    Cancelling the consumer (for example on client disconnect) cancels the
    upstream model request.
    """
    try:
        table_for_prompt = job.table
        if job.strategy is Strategy.RAG:
            table_for_prompt = await _prune_table(job, gateway)

        model = gateway.registry.get(job.model_id)
        spec = PromptSpec(
            claim=job.claim,
            table_text=render(table_for_prompt, job.table_format),
            title=job.title,
            technique=job.technique,
            output_language=job.output_language,
            deep_thinking=job.deep_thinking,
        )
        system_text, user_text = build_prompt(
            spec, model.context_budget, model.deep_thinking_marker
        )
    except TableCheckError as exc:
        yield StreamEvent.error(_error_code(exc), str(exc))
        yield StreamEvent.done()
        return
    except ValueError as exc:
        yield StreamEvent.error("invalid_request", str(exc))
        yield StreamEvent.done()
        return

    queue: asyncio.Queue[tuple[str, object]] = asyncio.Queue()

    async def pump() -> None:
        try:
            text = await gateway.stream_chat(
                job.model_id, system_text, user_text, lambda d: queue.put_nowait(("delta", d))
            )
            queue.put_nowait(("complete", text))
        except Exception as exc:  # surfaced to the consumer as an error event
            queue.put_nowait(("failed", exc))

    task = asyncio.create_task(pump())
    try:
        while True:
            kind, payload = await queue.get()
            if kind == "delta":
                yield StreamEvent.reasoning(payload)  # type: ignore[arg-type]
                continue
            if kind == "failed":
                exc = payload
                code = _error_code(exc) if isinstance(exc, TableCheckError) else "internal"
                if code == "internal":
                    logger.exception("verification failed", exc_info=exc)
                yield StreamEvent.error(code, str(exc))
                yield StreamEvent.done()
                return
            full_text = payload
            break
    finally:
        # Consumer gone or stream finished: tear down the upstream request.
        # Cancel and detach. Awaiting the pump here would forward this
        # task's own (possibly repeated, e.g. server-side disconnect scope)
        # cancellation into the pump's connection cleanup and leak the
        # upstream socket.
        task.cancel()

    try:
        verdict = finalize_verdict(extract_verdict(full_text), job.table)
    except TableCheckError as exc:
        yield StreamEvent.error(_error_code(exc), str(exc))
        yield StreamEvent.done()
        return
    yield StreamEvent.verdict(verdict)
    yield StreamEvent.done()
