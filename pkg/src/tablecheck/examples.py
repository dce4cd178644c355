"""Bundled benchmark examples and the line-delimited dataset format.

One JSON object per line: ``{id, title, claim, label, table_csv,
source_page_url}`` with ``label`` 1 for an entailed claim and 0 for a
refuted one. The packaged bundle is a small benchmark subset used by the
example picker in the UI and as the default bench fixture.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path


@dataclass(frozen=True)
class Example:
    id: str
    title: str | None
    claim: str
    label: int  # 1 = entailed, 0 = refuted
    table_csv: str
    source_page_url: str | None = None

    @property
    def gold_label(self) -> str:
        return "ENTAILED" if self.label == 1 else "REFUTED"


def _parse_line(line: str) -> Example:
    raw = json.loads(line)
    label = int(raw["label"])
    if label not in (0, 1):
        raise ValueError(f"label must be 0 or 1, got {raw['label']!r}")
    return Example(
        id=str(raw["id"]),
        title=raw.get("title"),
        claim=raw["claim"],
        label=label,
        table_csv=raw["table_csv"],
        source_page_url=raw.get("source_page_url"),
    )


def load_dataset(path: str | Path) -> list[Example]:
    examples = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                examples.append(_parse_line(line))
    return examples


def load_bundled_examples() -> list[Example]:
    raw = resources.files("tablecheck").joinpath("assets/examples.jsonl").read_text("utf-8")
    return [_parse_line(line) for line in raw.splitlines() if line.strip()]
