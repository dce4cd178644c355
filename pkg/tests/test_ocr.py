from __future__ import annotations

import pytest

from tablecheck.errors import EmptyTable, ImageTooLarge, OcrFailed, UnsupportedImage
from tablecheck.gateway import InferenceGateway
from tablecheck.ocr import (
    classical_recognizer,
    ingest_image,
    normalize_classical_output,
    vision_recognizer,
)
from tablecheck.table import inject_row_index, parse_table

from .test_gateway import small_registry

pytestmark = pytest.mark.anyio

PNG = b"\x89PNG\r\n\x1a\n" + b"\x00" * 16
JPEG = b"\xff\xd8\xff\xe0" + b"\x00" * 16
GIF = b"GIF89a" + b"\x00" * 16


def static_recognizer(text: str):
    async def recognize(image: bytes) -> str:
        return text

    return recognize


class TestIngest:
    async def test_pass_through_and_parse(self):
        result = await ingest_image(PNG, static_recognizer("a,b\n1,2"))
        assert result.csv_text == "a,b\n1,2"
        assert result.table.columns == ("row_index", "a", "b")
        assert result.table.rows == (("0", "1", "2"),)

    async def test_composition_law(self):
        for text in ("a,b\n1,2\n3,4", "x;y\n1;2", "name\nAlice"):
            result = await ingest_image(JPEG, static_recognizer(text))
            assert result.table == inject_row_index(parse_table(text))

    async def test_empty_recognition(self):
        with pytest.raises(EmptyTable):
            await ingest_image(PNG, static_recognizer("   "))

    async def test_header_only_recognition(self):
        with pytest.raises(EmptyTable):
            await ingest_image(PNG, static_recognizer("a,b"))

    async def test_gif_rejected(self):
        with pytest.raises(UnsupportedImage):
            await ingest_image(GIF, static_recognizer("a,b\n1,2"))

    async def test_oversize_rejected(self):
        with pytest.raises(ImageTooLarge):
            await ingest_image(PNG, static_recognizer("a\n1"), max_bytes=4)

    async def test_backend_error_becomes_ocr_failed(self):
        async def broken(image: bytes) -> str:
            raise RuntimeError("engine exploded")

        with pytest.raises(OcrFailed):
            await ingest_image(PNG, broken)


class TestClassicalBackend:
    def test_multispace_normalization(self):
        raw = "name   score\nAlice    3\nBob  4\n\n"
        assert normalize_classical_output(raw) == "name,score\nAlice,3\nBob,4"

    def test_single_spaces_kept(self):
        assert normalize_classical_output("first name  score") == "first name,score"

    async def test_external_process_output_parsed(self):
        recognize = classical_recognizer(
            ["sh", "-c", "printf 'name  score\\nAlice  3\\n'"]
        )
        result = await ingest_image(PNG, recognize)
        assert result.csv_text == "name,score\nAlice,3"
        assert result.table.rows == (("0", "Alice", "3"),)

    async def test_failing_process_is_ocr_failed(self):
        recognize = classical_recognizer(["sh", "-c", "echo boom >&2; exit 3"])
        with pytest.raises(OcrFailed):
            await ingest_image(PNG, recognize)


class TestVisionBackend:
    async def test_via_gateway(self, mock_server):
        mock_server.vision_text = "a,b\n1,2"
        gateway = InferenceGateway(small_registry(), mock_server.base_url)
        async with gateway:
            recognize = vision_recognizer(gateway, "vision-c")
            result = await ingest_image(PNG, recognize)
        assert result.csv_text == "a,b\n1,2"
        # Extraction prompt rides along as the user message.
        body = mock_server.requests[0]["body"]
        assert "CSV" in body["messages"][-1]["content"]
