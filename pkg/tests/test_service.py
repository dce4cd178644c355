from __future__ import annotations

import asyncio
import logging
import time

import httpx
import pytest

from .conftest import VALID_TRANSCRIPT, make_config
from .helpers import run_service, stream_sse

pytestmark = pytest.mark.anyio

TABLE = "name,score\nAlice,3\nBob,4\nCara,5"
CLAIM = "Alice scored 3 points."
PNG = b"\x89PNG\r\n\x1a\n" + b"\x00" * 16


def verify_body(**overrides) -> dict:
    body = {"table_csv": TABLE, "claim": CLAIM, "model_id": "phi4:14b"}
    body.update(overrides)
    return body


class TestVerifyStream:
    async def test_event_order_and_verdict(self, mock_server):
        mock_server.script.chunks = [VALID_TRANSCRIPT[i : i + 25] for i in range(0, len(VALID_TRANSCRIPT), 25)]
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                events = await stream_sse(client, f"{base}/api/verify", verify_body())
        kinds = [e[0] for e in events]
        assert kinds.count("verdict") == 1
        assert kinds.count("done") == 1
        assert kinds[-2:] == ["verdict", "done"]
        assert all(k == "reasoning" for k in kinds[:-2])
        assert len(kinds) > 2  # streamed at least one delta
        verdict = events[-2][1]
        assert verdict["label"] == "ENTAILED"
        assert verdict["relevant_cells"] == [{"row_index": 0, "column_name": "score"}]
        assert verdict["dropped_cells"] == []
        assert verdict["provenance"] == "STRUCTURED"

    async def test_reasoning_deltas_match_model_stream(self, mock_server):
        mock_server.script.chunks = ["abc", "def", "ghi", VALID_TRANSCRIPT]
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                events = await stream_sse(client, f"{base}/api/verify", verify_body())
        deltas = [data["text"] for kind, data, _ in events if kind == "reasoning"]
        assert "".join(deltas) == "abcdefghi" + VALID_TRANSCRIPT

    async def test_upstream_error_becomes_error_event(self, mock_server):
        mock_server.script.status = 500
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                events = await stream_sse(client, f"{base}/api/verify", verify_body())
        kinds = [e[0] for e in events]
        assert kinds == ["error", "done"]
        assert events[0][1]["code"] == "model_unavailable"

    async def test_unverifiable_output_is_explicit_error(self, mock_server):
        mock_server.script.chunks = ["no signal here at all"]
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                events = await stream_sse(client, f"{base}/api/verify", verify_body())
        kinds = [e[0] for e in events]
        # The delivered reasoning deltas stand; extraction failure then
        # surfaces as an explicit error, never a silent default.
        assert kinds[-2:] == ["error", "done"]
        assert "verdict" not in kinds
        assert events[-2][1]["code"] == "unverifiable"

    async def test_fallback_verdict_has_provenance(self, mock_server):
        mock_server.script.chunks = ["after checking, the claim is FALSE."]
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                events = await stream_sse(client, f"{base}/api/verify", verify_body())
        verdict = events[-2][1]
        assert verdict["label"] == "REFUTED"
        assert verdict["provenance"] == "FALLBACK_KEYWORD"
        assert verdict["relevant_cells"] == []

    async def test_rag_strategy_prunes_then_verifies(self, mock_server):
        mock_server.embed_dim = 768
        mock_server.script.chunks = [VALID_TRANSCRIPT]
        body = verify_body(strategy="rag", rag_granularity="row", rag_k=2)
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                events = await stream_sse(client, f"{base}/api/verify", body)
        assert events[-2][0] == "verdict"
        embed_requests = [r for r in mock_server.requests if r["path"] == "/api/embed"]
        assert len(embed_requests) == 1
        # claim + 3 row fragments in a single batched call
        assert len(embed_requests[0]["body"]["input"]) == 4

    async def test_example_id_resolves_table(self, mock_server):
        mock_server.script.chunks = ['{"answer": "TRUE"}']
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                detail = (await client.get(f"{base}/api/examples/ex-001")).json()
                events = await stream_sse(
                    client,
                    f"{base}/api/verify",
                    {"example_id": "ex-001", "claim": detail["claim"]},
                )
        assert events[-2][0] == "verdict"

    async def test_client_disconnect_cancels_upstream(self, mock_server):
        mock_server.script.chunks = ["tick "] * 100
        mock_server.script.delay_s = 0.1
        config = make_config(mock_server)
        async with run_service(config) as base:
            async with httpx.AsyncClient() as client:
                await stream_sse(client, f"{base}/api/verify", verify_body(), stop_after=2)
                disconnect_time = time.monotonic()
                deadline = disconnect_time + config.stall_timeout_s
                while not mock_server.disconnects and time.monotonic() < deadline:
                    await asyncio.sleep(0.02)
        assert mock_server.disconnects, "upstream never saw the cancellation"
        assert mock_server.disconnects[0] <= deadline


class TestEventOrderingInvariant:
    async def test_hundred_runs_with_randomized_chunking(self, mock_server):
        import random

        rng = random.Random(7)
        config = make_config(mock_server, rate_capacity=10_000)
        async with run_service(config) as base:
            async with httpx.AsyncClient() as client:
                for _ in range(100):
                    pieces, pos = [], 0
                    while pos < len(VALID_TRANSCRIPT):
                        step = rng.randint(1, 30)
                        pieces.append(VALID_TRANSCRIPT[pos : pos + step])
                        pos += step
                    mock_server.script.chunks = pieces
                    events = await stream_sse(client, f"{base}/api/verify", verify_body())
                    kinds = [e[0] for e in events]
                    assert kinds.count("verdict") == 1
                    assert kinds.count("done") == 1
                    assert kinds[-2:] == ["verdict", "done"]
                    assert all(k == "reasoning" for k in kinds[:-2])


class TestBundledExamples:
    def test_every_bundled_table_parses_cleanly(self):
        from tablecheck.examples import load_bundled_examples
        from tablecheck.table import inject_row_index, parse_table

        examples = load_bundled_examples()
        assert len(examples) == 50
        assert {ex.label for ex in examples} == {0, 1}
        for ex in examples:
            table = inject_row_index(parse_table(ex.table_csv, title=ex.title))
            assert table.row_count >= 1
            assert ex.claim.strip()
            assert ex.source_page_url and ex.source_page_url.startswith("https://")


class TestVerifyValidation:
    async def test_both_table_and_example_rejected(self, mock_server):
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                r = await client.post(
                    f"{base}/api/verify", json=verify_body(example_id="ex-001")
                )
        assert r.status_code == 400

    async def test_neither_table_nor_example_rejected(self, mock_server):
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                r = await client.post(f"{base}/api/verify", json={"claim": CLAIM})
        assert r.status_code == 400

    async def test_empty_claim_rejected(self, mock_server):
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                r = await client.post(f"{base}/api/verify", json=verify_body(claim="  "))
        assert r.status_code == 400

    async def test_bad_enum_rejected(self, mock_server):
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                r = await client.post(f"{base}/api/verify", json=verify_body(format="yaml"))
        assert r.status_code == 400

    async def test_unknown_model_404(self, mock_server):
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                r = await client.post(f"{base}/api/verify", json=verify_body(model_id="ghost"))
        assert r.status_code == 404

    async def test_unknown_example_404(self, mock_server):
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                r = await client.post(
                    f"{base}/api/verify",
                    json={"example_id": "ex-999", "claim": CLAIM},
                )
        assert r.status_code == 404

    async def test_oversize_table_413(self, mock_server):
        big = "h\n" + "\n".join(str(i) for i in range(501))
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                r = await client.post(f"{base}/api/verify", json=verify_body(table_csv=big))
        assert r.status_code == 413

    async def test_unparseable_table_400(self, mock_server):
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                r = await client.post(f"{base}/api/verify", json=verify_body(table_csv="x"))
        assert r.status_code == 400

    async def test_deep_thinking_requires_support(self, mock_server):
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                r = await client.post(
                    f"{base}/api/verify",
                    json=verify_body(model_id="phi4:14b", deep_thinking=True),
                )
                ok = await client.post(
                    f"{base}/api/verify",
                    json=verify_body(model_id="cogito:8b", deep_thinking=True),
                )
        assert r.status_code == 400
        assert ok.status_code == 200

    async def test_deep_thinking_marker_reaches_backend(self, mock_server):
        mock_server.script.chunks = ['{"answer": "TRUE"}']
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                await stream_sse(
                    client,
                    f"{base}/api/verify",
                    verify_body(model_id="cogito:8b", deep_thinking=True),
                )
        body = next(r["body"] for r in mock_server.requests if r["path"] == "/api/chat")
        system = next(m["content"] for m in body["messages"] if m["role"] == "system")
        assert system.startswith("Enable deep thinking subroutine.")


class TestRateLimit:
    async def test_burst_then_429_with_retry_after(self, mock_server):
        mock_server.script.chunks = ['{"answer": "TRUE"}']
        config = make_config(mock_server, rate_capacity=3, rate_window_s=60.0)
        async with run_service(config) as base:
            async with httpx.AsyncClient() as client:
                statuses = []
                for _ in range(4):
                    r = await client.post(f"{base}/api/verify", json=verify_body())
                    statuses.append(r.status_code)
                last = r
        assert statuses == [200, 200, 200, 429]
        assert int(last.headers["Retry-After"]) >= 1

    async def test_exactly_capacity_succeed_under_concurrency(self, mock_server):
        mock_server.script.chunks = ['{"answer": "TRUE"}']
        config = make_config(mock_server, rate_capacity=3, rate_window_s=60.0)
        async with run_service(config) as base:
            async with httpx.AsyncClient() as client:
                responses = await asyncio.gather(
                    *(client.post(f"{base}/api/verify", json=verify_body()) for _ in range(13))
                )
        statuses = [r.status_code for r in responses]
        assert statuses.count(200) == 3
        assert statuses.count(429) == 10


class TestListings:
    async def test_models_public_projection(self, mock_server):
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                models = (await client.get(f"{base}/api/models")).json()
        assert len(models) == 4
        ids = [m["model_id"] for m in models]
        assert ids == ["phi4:14b", "cogito:8b", "deepseek-r1:7b", "gemma3:4b"]
        for m in models:
            assert "deep_thinking_marker" not in m

    async def test_examples_list_and_detail(self, mock_server):
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                listing = (await client.get(f"{base}/api/examples")).json()
                detail = (await client.get(f"{base}/api/examples/ex-003")).json()
                missing = await client.get(f"{base}/api/examples/ex-999")
        assert len(listing) == 50
        assert set(listing[0]) == {"id", "title", "claim", "label"}
        assert "table_csv" in detail and "source_page_url" in detail
        assert detail["source_page_url"].startswith("https://en.wikipedia.org/wiki/")
        assert missing.status_code == 404


class TestOcrEndpoint:
    async def test_vision_backend_round_trip(self, mock_server):
        mock_server.vision_text = "a,b\n1,2"
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                r = await client.post(
                    f"{base}/api/ocr",
                    files={"image": ("t.png", PNG, "image/png")},
                    data={"backend": "vision"},
                )
        assert r.status_code == 200
        payload = r.json()
        assert payload["csv_text"] == "a,b\n1,2"
        assert payload["table"]["columns"] == ["row_index", "a", "b"]

    async def test_unknown_backend_400(self, mock_server):
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                r = await client.post(
                    f"{base}/api/ocr",
                    files={"image": ("t.png", PNG, "image/png")},
                    data={"backend": "psychic"},
                )
        assert r.status_code == 400

    async def test_oversize_413(self, mock_server):
        config = make_config(mock_server, max_upload_bytes=64)
        async with run_service(config) as base:
            async with httpx.AsyncClient() as client:
                r = await client.post(
                    f"{base}/api/ocr",
                    files={"image": ("t.png", PNG + b"\x00" * 100, "image/png")},
                    data={"backend": "vision"},
                )
        assert r.status_code == 413

    async def test_gif_415(self, mock_server):
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                r = await client.post(
                    f"{base}/api/ocr",
                    files={"image": ("t.gif", b"GIF89a" + b"\x00" * 8, "image/gif")},
                    data={"backend": "vision"},
                )
        assert r.status_code == 415

    async def test_empty_recognition_422(self, mock_server):
        mock_server.vision_text = "   "
        async with run_service(make_config(mock_server)) as base:
            async with httpx.AsyncClient() as client:
                r = await client.post(
                    f"{base}/api/ocr",
                    files={"image": ("t.png", PNG, "image/png")},
                    data={"backend": "vision"},
                )
        assert r.status_code == 422


class TestPrivacy:
    async def test_request_logs_never_contain_claim_or_table(self, mock_server, caplog):
        mock_server.script.chunks = [VALID_TRANSCRIPT]
        secret_claim = "SECRET-CLAIM-TOKEN scored 3 points"
        secret_cell = "SECRET-CELL-TOKEN"
        with caplog.at_level(logging.DEBUG):
            async with run_service(make_config(mock_server)) as base:
                async with httpx.AsyncClient() as client:
                    await stream_sse(
                        client,
                        f"{base}/api/verify",
                        verify_body(
                            claim=secret_claim,
                            table_csv=f"name,score\n{secret_cell},3",
                        ),
                    )
        joined = "\n".join(r.getMessage() for r in caplog.records)
        assert "SECRET-CLAIM-TOKEN" not in joined
        assert "SECRET-CELL-TOKEN" not in joined
        assert any("path=/api/verify" in r.getMessage() for r in caplog.records)
