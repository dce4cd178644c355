"""Structured verdict extraction from raw model output.

Models are instructed to reason first and finish with one JSON object, but
real output drifts: think-blocks, stray braces in the prose, malformed JSON,
or no JSON at all. Extraction therefore runs in tiers: parse the last
top-level JSON object, and failing that fall back to keyword recovery over
the tail of the text. Arbitrary input never raises anything except the
explicit ``Unverifiable``.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field, replace
from enum import Enum

from .errors import Unverifiable
from .table import CellRef, Table, validate_cell_refs

logger = logging.getLogger(__name__)

THINK_OPEN = "<think>"
THINK_CLOSE = "</think>"

# Conclusions live at the end of a trace; a full-text scan would match
# quoted claim text instead.
KEYWORD_WINDOW = 500

_KEYWORD = re.compile(r"\b(true|false)\b", re.IGNORECASE)


class VerdictLabel(Enum):
    ENTAILED = "ENTAILED"
    REFUTED = "REFUTED"


class Provenance(Enum):
    STRUCTURED = "STRUCTURED"
    FALLBACK_KEYWORD = "FALLBACK_KEYWORD"


@dataclass(frozen=True)
class Verdict:
    label: VerdictLabel
    relevant_cells: tuple[CellRef, ...]
    reasoning: str
    provenance: Provenance
    dropped_cells: tuple[CellRef, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        """The wire/export schema consumed by the frontend."""
        return {
            "label": self.label.value,
            "relevant_cells": [
                {"row_index": c.row_index, "column_name": c.column_name}
                for c in self.relevant_cells
            ],
            "dropped_cells": [
                {"row_index": c.row_index, "column_name": c.column_name}
                for c in self.dropped_cells
            ],
            "reasoning": self.reasoning,
            "provenance": self.provenance.value,
        }


def strip_think_blocks(text: str) -> tuple[str, str]:
    """Split well-formed ``<think>...</think>`` blocks out of the text.

    Returns (visible, thinking). A dangling opener leaves the text untouched
    and logs a soft warning; a stray closer is treated as plain text.
    """
    visible_parts: list[str] = []
    thinking_parts: list[str] = []
    pos = 0
    while True:
        start = text.find(THINK_OPEN, pos)
        if start == -1:
            visible_parts.append(text[pos:])
            break
        end = text.find(THINK_CLOSE, start + len(THINK_OPEN))
        if end == -1:
            logger.warning("unbalanced think block; leaving output untouched")
            return text, ""
        visible_parts.append(text[pos:start])
        thinking_parts.append(text[start + len(THINK_OPEN) : end])
        pos = end + len(THINK_CLOSE)
    return "".join(visible_parts), "".join(thinking_parts)


def _balanced_span_from(text: str, start: int) -> int | None:
    """End index (exclusive) of the brace block opening at ``start``, if balanced."""
    depth = 0
    in_string = False
    escaped = False
    for i in range(start, len(text)):
        ch = text[i]
        if in_string:
            if escaped:
                escaped = False
            elif ch == "\\":
                escaped = True
            elif ch == '"':
                in_string = False
            continue
        if ch == '"':
            in_string = True
        elif ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth == 0:
                return i + 1
    return None


def _last_top_level_json_span(text: str) -> tuple[int, int] | None:
    """Span of the last balanced top-level brace block, quote-aware.

    Scans left to right; a balanced block consumes its nested braces, an
    unbalanced opener is skipped so junk earlier in the trace cannot mask a
    well-formed object at the end.
    """
    spans: list[tuple[int, int]] = []
    pos = 0
    while True:
        start = text.find("{", pos)
        if start == -1:
            break
        end = _balanced_span_from(text, start)
        if end is None:
            pos = start + 1
        else:
            spans.append((start, end))
            pos = end
    return spans[-1] if spans else None


def _locate_candidate_object(text: str) -> tuple[int, int, dict] | None:
    """The JSON object tier 1 should judge, with its span in ``text``.

    An object closing exactly at the (right-stripped) end of the text wins:
    that is where an instruction-following model puts it, and anchoring on
    the end keeps stray braces or quotes earlier in the prose from masking
    it. Without a trailing object, the last top-level balanced block is used.
    """
    stripped_end = len(text.rstrip())
    pos = text.rfind("{", 0, stripped_end)
    while pos != -1:
        end = _balanced_span_from(text, pos)
        if end == stripped_end:
            try:
                obj = json.loads(text[pos:end])
            except json.JSONDecodeError:
                obj = None
            if isinstance(obj, dict):
                return pos, end, obj
        pos = text.rfind("{", 0, pos)

    span = _last_top_level_json_span(text)
    if span is not None:
        try:
            obj = json.loads(text[span[0] : span[1]])
        except json.JSONDecodeError:
            obj = None
        if isinstance(obj, dict):
            return span[0], span[1], obj
    return None


def _parse_cells(raw: object) -> tuple[CellRef, ...]:
    """Lenient cell list parsing; malformed entries are skipped individually."""
    if not isinstance(raw, list):
        return ()
    cells: list[CellRef] = []
    for entry in raw:
        if not isinstance(entry, dict):
            continue
        row = entry.get("row_index")
        col = entry.get("column_name")
        if isinstance(row, bool):
            continue
        if isinstance(row, str) and re.fullmatch(r"-?\d+", row.strip()):
            row = int(row.strip())
        if not isinstance(row, int) or not isinstance(col, str):
            continue
        cells.append(CellRef(row_index=row, column_name=col))
    return tuple(cells)


def _with_thinking(reasoning: str, thinking: str) -> str:
    if not thinking.strip():
        return reasoning.strip()
    if not reasoning.strip():
        return thinking.strip()
    return f"{reasoning.strip()}\n\n{thinking.strip()}"


def extract_verdict(full_text: str) -> Verdict:
    """Two-tier extraction; raises ``Unverifiable`` only when both tiers fail.

    Tier 1 parses the last balanced top-level JSON object and accepts it if
    ``answer`` is case-insensitively TRUE or FALSE. Tier 2 scans the final
    ``KEYWORD_WINDOW`` characters for the last standalone true/false token
    and yields a cell-less fallback verdict.
    """
    visible, thinking = strip_think_blocks(full_text)

    candidate = _locate_candidate_object(visible)
    if candidate is not None:
        start, end, obj = candidate
        answer = obj.get("answer")
        if isinstance(answer, str) and answer.strip().upper() in ("TRUE", "FALSE"):
            label = (
                VerdictLabel.ENTAILED
                if answer.strip().upper() == "TRUE"
                else VerdictLabel.REFUTED
            )
            reasoning = _with_thinking(visible[:start] + visible[end:], thinking)
            return Verdict(
                label=label,
                relevant_cells=_parse_cells(obj.get("relevant_cells")),
                reasoning=reasoning,
                provenance=Provenance.STRUCTURED,
            )

    matches = list(_KEYWORD.finditer(visible[-KEYWORD_WINDOW:]))
    if matches:
        label = (
            VerdictLabel.ENTAILED
            if matches[-1].group(1).lower() == "true"
            else VerdictLabel.REFUTED
        )
        return Verdict(
            label=label,
            relevant_cells=(),
            reasoning=_with_thinking(visible, thinking),
            provenance=Provenance.FALLBACK_KEYWORD,
        )

    raise Unverifiable("model output contains neither a parseable verdict nor a keyword")


def finalize_verdict(verdict: Verdict, table: Table) -> Verdict:
    """Validate cell references against the full (unpruned) request table."""
    valid, dropped = validate_cell_refs(table, list(verdict.relevant_cells))
    return replace(
        verdict,
        relevant_cells=tuple(valid),
        dropped_cells=verdict.dropped_cells + tuple(dropped),
    )
