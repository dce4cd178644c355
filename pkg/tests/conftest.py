from __future__ import annotations

import pytest

from tablecheck.config import AppConfig
from tablecheck.table import Table, inject_row_index, parse_table

from .mock_inference import MockInferenceServer


@pytest.fixture
def anyio_backend():
    return "asyncio"


@pytest.fixture
async def mock_server():
    server = MockInferenceServer()
    await server.start()
    yield server
    await server.stop()


def make_config(mock_server: MockInferenceServer, **overrides) -> AppConfig:
    """Service/gateway config pointed at the mock backend, fast timeouts."""
    config = AppConfig(
        inference_base_url=mock_server.base_url,
        total_timeout_s=30.0,
        stall_timeout_s=5.0,
        retry_attempts=0,
    )
    for key, value in overrides.items():
        setattr(config, key, value)
    return config


@pytest.fixture
def scores_table() -> Table:
    return inject_row_index(parse_table("name,score\nAlice,3\nBob,4\nCara,5"))


VALID_TRANSCRIPT = (
    "Looking at the score column, Alice has 3 points which matches the claim. "
    '{"answer": "TRUE", "relevant_cells": [{"row_index": 0, "column_name": "score"}]}'
)
