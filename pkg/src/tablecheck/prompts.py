"""Prompt assembly.

Wording lives in plain-text template assets so it can be iterated without
code changes; this module only fills placeholders and enforces the context
budget. Placeholder syntax: ``{claim}``, ``{table}``, ``{title}`` and
``{language}`` are substituted, any other brace sequence is literal text.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources

from .errors import PromptTooLong


class PromptingTechnique(Enum):
    ZERO_SHOT = "zero_shot"
    CHAIN_OF_THOUGHT = "chain_of_thought"


@lru_cache(maxsize=None)
def _asset_text(name: str) -> str:
    return resources.files("tablecheck").joinpath(f"assets/prompts/{name}").read_text("utf-8")


@lru_cache(maxsize=1)
def supported_languages() -> dict[str, str]:
    """Language tag -> English display name, loaded from configuration."""
    raw = resources.files("tablecheck").joinpath("assets/languages.json").read_text("utf-8")
    return json.loads(raw)


_PLACEHOLDER = re.compile(r"\{(claim|table|title|language)\}")


def _fill(template: str, values: dict[str, str]) -> str:
    return _PLACEHOLDER.sub(lambda m: values[m.group(1)], template)


@dataclass(frozen=True)
class PromptSpec:
    """Everything build_prompt needs besides registry-supplied model facts."""

    claim: str
    table_text: str
    title: str | None
    technique: PromptingTechnique
    output_language: str = "en"
    deep_thinking: bool = False

    def __post_init__(self) -> None:
        trimmed = self.claim.strip()
        if not trimmed:
            raise ValueError("claim must be non-empty")
        object.__setattr__(self, "claim", trimmed)
        if self.output_language not in supported_languages():
            raise ValueError(f"unsupported output language {self.output_language!r}")


def build_prompt(
    spec: PromptSpec,
    context_budget: int,
    deep_thinking_marker: str | None = None,
) -> tuple[str, str]:
    """Assemble (system_text, user_text) for one verification request.

    ``context_budget`` is the model's budget in characters (tokens are
    approximated as characters/4 throughout). ``deep_thinking_marker`` is the
    registry-supplied string that switches a hybrid-reasoning model into its
    extended mode; it is prepended to the system text only when the spec asks
    for deep thinking.
    """
    system_template = _asset_text(
        "system_chain_of_thought.txt"
        if spec.technique is PromptingTechnique.CHAIN_OF_THOUGHT
        else "system_zero_shot.txt"
    )
    user_template = _asset_text(
        "user_with_title.txt" if spec.title else "user_without_title.txt"
    )

    values = {
        "claim": spec.claim,
        "table": spec.table_text,
        "title": spec.title or "",
        "language": supported_languages()[spec.output_language],
    }
    system_text = _fill(system_template, values)
    if spec.deep_thinking and deep_thinking_marker:
        system_text = f"{deep_thinking_marker}\n\n{system_text}"
    user_text = _fill(user_template, values)

    total = len(system_text) + len(user_text)
    if total > context_budget:
        raise PromptTooLong(
            f"prompt is {total} characters, budget is {context_budget}; "
            "prune the table (RAG) or shorten the input"
        )
    return system_text, user_text


def ocr_extraction_prompt() -> str:
    """Fixed instruction sent with a table image to a vision model."""
    return _asset_text("ocr_extract.txt").strip()
