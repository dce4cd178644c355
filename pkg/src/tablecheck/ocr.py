"""Image-to-table ingestion over pluggable OCR backends.

Two backend kinds: a vision model reached through the inference gateway
(asked to emit CSV directly) and a classical OCR engine invoked as an
external process whose line output is post-processed into delimited text.
Either way the recognized text flows through the normal table parsing, and
the raw text is returned alongside the table so a user can correct
recognition errors by hand.
"""

from __future__ import annotations

import asyncio
import re
from dataclasses import dataclass
from enum import Enum
from typing import Awaitable, Callable

from .errors import (
    EmptyTable,
    ImageTooLarge,
    NoDelimiter,
    OcrFailed,
    TableTooLarge,
    UnsupportedImage,
)
from .gateway import InferenceGateway
from .prompts import ocr_extraction_prompt
from .table import Table, inject_row_index, parse_table

# recognize(image_bytes) -> raw text
Recognizer = Callable[[bytes], Awaitable[str]]


class OcrBackendKind(Enum):
    VISION_MODEL = "vision"
    CLASSICAL = "classical"


@dataclass(frozen=True)
class OcrResult:
    csv_text: str
    table: Table


_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"
_JPEG_MAGIC = b"\xff\xd8\xff"


def _check_image(image: bytes, max_bytes: int) -> None:
    if not image:
        raise UnsupportedImage("empty image payload")
    if len(image) > max_bytes:
        raise ImageTooLarge(f"image is {len(image)} bytes, cap is {max_bytes}")
    if not (image.startswith(_PNG_MAGIC) or image.startswith(_JPEG_MAGIC)):
        raise UnsupportedImage("only PNG and JPEG images are accepted")


def vision_recognizer(gateway: InferenceGateway, model_id: str) -> Recognizer:
    """Backend that asks a multimodal model to transcribe the table as CSV."""
    prompt = ocr_extraction_prompt()

    async def recognize(image: bytes) -> str:
        return await gateway.ocr_via_vision(model_id, image, prompt)

    return recognize


_MULTISPACE = re.compile(r" {2,}")


def normalize_classical_output(raw: str) -> str:
    """Turn space-aligned OCR line output into comma-delimited text."""
    lines = [_MULTISPACE.sub(",", line.strip()) for line in raw.splitlines()]
    return "\n".join(line for line in lines if line)


def classical_recognizer(command: list[str]) -> Recognizer:
    """Backend that pipes the image through an external OCR executable."""

    async def recognize(image: bytes) -> str:
        process = await asyncio.create_subprocess_exec(
            *command,
            stdin=asyncio.subprocess.PIPE,
            stdout=asyncio.subprocess.PIPE,
            stderr=asyncio.subprocess.PIPE,
        )
        stdout, stderr = await process.communicate(image)
        if process.returncode != 0:
            raise OcrFailed(f"OCR process exited {process.returncode}: {stderr.decode(errors='replace').strip()}")
        return normalize_classical_output(stdout.decode("utf-8", errors="replace"))

    return recognize


async def ingest_image(
    image: bytes,
    recognize: Recognizer,
    *,
    max_bytes: int = 10 * 1024 * 1024,
    title: str | None = None,
) -> OcrResult:
    """Recognize a table image and normalize it: parse + row_index injection.

    Backend failures surface as typed errors, never crashes; the raw
    recognized text rides along for manual correction.
    """
    _check_image(image, max_bytes)
    try:
        raw_text = await recognize(image)
    except (ImageTooLarge, UnsupportedImage):
        raise
    except OcrFailed:
        raise
    except Exception as exc:
        raise OcrFailed(f"OCR backend failed: {exc}") from exc

    if not raw_text.strip():
        raise EmptyTable("recognition produced no text")
    try:
        table = inject_row_index(parse_table(raw_text, title=title))
    except (EmptyTable, TableTooLarge, NoDelimiter):
        raise
    return OcrResult(csv_text=raw_text, table=table)
