"""Importer from the benchmark's native multi-file layout.

The public table-fact benchmark ships a JSON file mapping table id to
``[statements, labels, caption]`` plus a directory of ``#``-delimited table
files. This converts that layout into the line-delimited record format the
bench harness reads: one ``{id, title, claim, label, table_csv}`` object per
claim.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path


def convert_table_file(path: Path) -> str:
    """``#``-delimited benchmark table -> standard comma CSV text."""
    out = io.StringIO(newline="")
    writer = csv.writer(out, delimiter=",", lineterminator="\n")
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.strip():
            writer.writerow(line.split("#"))
    return out.getvalue()


def import_native(statements_json: Path, tables_dir: Path, out_path: Path) -> int:
    """Write the converted dataset; returns the number of records."""
    data = json.loads(statements_json.read_text(encoding="utf-8"))
    written = 0
    with open(out_path, "w", encoding="utf-8") as out:
        for table_id in sorted(data):
            statements, labels, caption = data[table_id]
            table_csv = convert_table_file(tables_dir / table_id)
            for i, (claim, label) in enumerate(zip(statements, labels)):
                record = {
                    "id": f"{table_id}::{i}",
                    "title": caption,
                    "claim": claim,
                    "label": int(label),
                    "table_csv": table_csv,
                }
                out.write(json.dumps(record, ensure_ascii=False) + "\n")
                written += 1
    return written


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="tablecheck-import",
        description="Convert the benchmark's native layout into bench JSONL records.",
    )
    parser.add_argument("--statements", required=True, help="native statements JSON file")
    parser.add_argument("--tables", required=True, help="directory of #-delimited table files")
    parser.add_argument("--out", required=True, help="output JSONL path")
    args = parser.parse_args(argv)
    try:
        written = import_native(Path(args.statements), Path(args.tables), Path(args.out))
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {written} records to {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
