"""Shared test utilities: run the service on a real port, parse SSE."""

from __future__ import annotations

import asyncio
import json
import time
from contextlib import asynccontextmanager

import httpx
import uvicorn

from tablecheck.config import AppConfig
from tablecheck.service import create_app


@asynccontextmanager
async def run_service(config: AppConfig):
    """Serve the app with uvicorn on an ephemeral port; yields the base URL.

    A real server (not an in-process transport) so client disconnects,
    concurrency, and streaming timing behave as in production.
    """
    app = create_app(config)
    server = uvicorn.Server(
        uvicorn.Config(app, host="127.0.0.1", port=0, log_level="warning", lifespan="on")
    )
    task = asyncio.create_task(server.serve())
    while not server.started:
        if task.done():
            task.result()  # surface startup failure
        await asyncio.sleep(0.01)
    port = server.servers[0].sockets[0].getsockname()[1]
    try:
        yield f"http://127.0.0.1:{port}"
    finally:
        server.should_exit = True
        await task


def parse_sse(text: str) -> list[tuple[str, dict]]:
    """Parse a complete SSE body into (event, data) pairs."""
    events = []
    for frame in text.split("\n\n"):
        event, data = None, None
        for line in frame.splitlines():
            if line.startswith("event:"):
                event = line[len("event:"):].strip()
            elif line.startswith("data:"):
                data = json.loads(line[len("data:"):].strip())
        if event is not None:
            events.append((event, data))
    return events


async def stream_sse(
    client: httpx.AsyncClient, url: str, body: dict, stop_after: int | None = None
) -> list[tuple[str, dict, float]]:
    """POST and consume an SSE stream; returns (event, data, monotonic_time).

    ``stop_after`` aborts the stream (client disconnect) after that many
    events have been received.
    """
    events: list[tuple[str, dict, float]] = []
    async with client.stream("POST", url, json=body) as response:
        response.raise_for_status()
        buffer = ""
        async for chunk in response.aiter_text():
            buffer += chunk
            while "\n\n" in buffer:
                frame, buffer = buffer.split("\n\n", 1)
                event, data = None, None
                for line in frame.splitlines():
                    if line.startswith("event:"):
                        event = line[len("event:"):].strip()
                    elif line.startswith("data:"):
                        data = json.loads(line[len("data:"):].strip())
                if event is not None:
                    events.append((event, data, time.monotonic()))
                    if stop_after is not None and len(events) >= stop_after:
                        return events
    return events
