"""Table fact-checking: verify a natural-language claim against a table.

The package parses and normalizes user tables, renders them into prompt
representations, orchestrates a streaming LLM backend over HTTP, and turns
the model's output into a structured entailed/refuted verdict with
self-identified relevant cells. See the service module for the HTTP API and
the bench module for the offline evaluation harness.
"""

from .render import TableFormat, render
from .table import CellRef, Table, inject_row_index, parse_table, serialize_csv
from .verdict import Verdict, VerdictLabel, extract_verdict, finalize_verdict

__version__ = "0.1.0"

__all__ = [
    "CellRef",
    "Table",
    "TableFormat",
    "Verdict",
    "VerdictLabel",
    "extract_verdict",
    "finalize_verdict",
    "inject_row_index",
    "parse_table",
    "render",
    "serialize_csv",
    "__version__",
]
