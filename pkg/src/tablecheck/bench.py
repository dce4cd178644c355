"""Offline evaluation harness.

Runs the exact service pipeline (minus HTTP) over a line-delimited dataset
across a grid of model x format x technique x strategy configurations, and
writes per-run records plus a summary report. A deterministic mock mode
(``--mock echo`` / ``--mock invert``) exercises the full pipeline without an
inference backend, for CI.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
import time
from dataclasses import dataclass
from itertools import product
from pathlib import Path

from .config import load_config
from .examples import Example, load_dataset
from .gateway import ModelRegistry
from .pipeline import Strategy, VerificationJob, run_verification
from .prompts import PromptingTechnique
from .render import TableFormat
from .retrieval import Granularity
from .table import inject_row_index, parse_table

BUNDLED = "bundled"


@dataclass(frozen=True)
class EvalConfiguration:
    model_id: str
    table_format: TableFormat
    technique: PromptingTechnique
    strategy: Strategy

    def key(self) -> str:
        return "/".join(
            (self.model_id, self.table_format.value, self.technique.value, self.strategy.value)
        )


@dataclass
class EvalRecord:
    example_id: str
    gold_label: str  # ENTAILED | REFUTED
    predicted: str  # ENTAILED | REFUTED | UNVERIFIABLE
    provenance: str | None
    latency_ms: float
    configuration: EvalConfiguration
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "example_id": self.example_id,
            "gold_label": self.gold_label,
            "predicted": self.predicted,
            "provenance": self.provenance,
            "latency_ms": round(self.latency_ms, 3),
            "configuration": {
                "model": self.configuration.model_id,
                "format": self.configuration.table_format.value,
                "technique": self.configuration.technique.value,
                "strategy": self.configuration.strategy.value,
            },
            "error": self.error,
        }


@dataclass
class EvalReport:
    total: int
    accuracy: float
    confusion: dict[str, int]
    per_configuration: dict[str, dict]

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "accuracy": self.accuracy,
            "confusion": self.confusion,
            "per_configuration": self.per_configuration,
        }


class ScriptedGateway:
    """In-process stand-in for the inference gateway, used by mock mode.

    Streams a fixed transcript in small chunks and hands out deterministic
    pseudo-embeddings, so the whole pipeline (RAG included) runs with no
    backend.
    """

    def __init__(self, registry: ModelRegistry, transcript: str, chunk_size: int = 40):
        self.registry = registry
        self._transcript = transcript
        self._chunk_size = chunk_size

    async def stream_chat(self, model_id, system_text, user_text, on_chunk) -> str:
        self.registry.get(model_id)
        for i in range(0, len(self._transcript), self._chunk_size):
            on_chunk(self._transcript[i : i + self._chunk_size])
            await asyncio.sleep(0)
        return self._transcript

    async def embed(self, model_id, texts):
        spec = self.registry.get(model_id)
        dim = spec.embedding_dim or 8
        vectors = []
        for text in texts:
            seed = hash(text) & 0xFFFFFFFF
            vec = []
            for i in range(dim):
                seed = (seed * 1103515245 + 12345) & 0x7FFFFFFF
                vec.append((seed / 0x7FFFFFFF) * 2.0 - 1.0)
            vectors.append(vec)
        return vectors


def mock_transcript(example: Example, invert: bool) -> str:
    """Reasoning text plus the structured answer, echoing (or inverting) gold."""
    entailed = (example.label == 1) != invert
    answer = "TRUE" if entailed else "FALSE"
    try:
        first_column = parse_table(example.table_csv).columns[0]
    except Exception:
        first_column = "col_0"
    cells = json.dumps([{"row_index": 0, "column_name": first_column}])
    return (
        "Comparing the claim against the table row by row. "
        f"The table evidence settles it.\n"
        f'{{"answer": "{answer}", "relevant_cells": {cells}}}'
    )


def build_job(example: Example, conf: EvalConfiguration, embedding_model_id: str) -> VerificationJob:
    table = inject_row_index(parse_table(example.table_csv, title=example.title))
    return VerificationJob(
        table=table,
        claim=example.claim,
        title=example.title,
        model_id=conf.model_id,
        embedding_model_id=embedding_model_id,
        table_format=conf.table_format,
        technique=conf.technique,
        strategy=conf.strategy,
        rag_granularity=Granularity.ROW,
    )


async def evaluate_one(example: Example, conf: EvalConfiguration, gateway, embedding_model_id: str) -> EvalRecord:
    started = time.monotonic()
    predicted, provenance, error = "UNVERIFIABLE", None, None
    try:
        job = build_job(example, conf, embedding_model_id)
        async for event in run_verification(job, gateway):
            if event.kind == "verdict":
                predicted = event.payload["label"]
                provenance = event.payload["provenance"]
            elif event.kind == "error":
                error = f"{event.payload['code']}: {event.payload['message']}"
    except Exception as exc:  # harness never aborts on one example
        error = str(exc)
    return EvalRecord(
        example_id=example.id,
        gold_label=example.gold_label,
        predicted=predicted,
        provenance=provenance,
        latency_ms=(time.monotonic() - started) * 1000,
        configuration=conf,
        error=error,
    )


def summarize(records: list[EvalRecord]) -> EvalReport:
    confusion = {"tp": 0, "tn": 0, "fp": 0, "fn": 0, "unv": 0}
    per_conf: dict[str, dict] = {}
    correct = 0
    for rec in records:
        if rec.predicted == "UNVERIFIABLE":
            confusion["unv"] += 1
        elif rec.predicted == "ENTAILED":
            confusion["tp" if rec.gold_label == "ENTAILED" else "fp"] += 1
        else:
            confusion["tn" if rec.gold_label == "REFUTED" else "fn"] += 1
        hit = rec.predicted == rec.gold_label
        correct += hit
        bucket = per_conf.setdefault(rec.configuration.key(), {"total": 0, "correct": 0})
        bucket["total"] += 1
        bucket["correct"] += hit
    for bucket in per_conf.values():
        bucket["accuracy"] = bucket["correct"] / bucket["total"] if bucket["total"] else 0.0
    total = len(records)
    assert sum(confusion.values()) == total, "confusion counts must sum to total"
    return EvalReport(
        total=total,
        accuracy=correct / total if total else 0.0,
        confusion=confusion,
        per_configuration=per_conf,
    )


def recount_accuracy(records_path: Path) -> float:
    """Independent recount over the records file; cross-checks the report."""
    total = correct = 0
    with open(records_path, encoding="utf-8") as handle:
        for line in handle:
            if not line.strip():
                continue
            rec = json.loads(line)
            total += 1
            correct += rec["predicted"] == rec["gold_label"]
    return correct / total if total else 0.0


async def run_eval(
    examples: list[Example],
    grid: list[EvalConfiguration],
    *,
    concurrency: int = 4,
    mock: str | None = None,
    gateway=None,
    registry: ModelRegistry | None = None,
    embedding_model_id: str = "nomic-embed-text",
) -> list[EvalRecord]:
    """Evaluate every (example, configuration) pair; failures never abort."""
    semaphore = asyncio.Semaphore(max(1, concurrency))

    async def worker(example: Example, conf: EvalConfiguration) -> EvalRecord:
        async with semaphore:
            if mock is not None:
                g = ScriptedGateway(registry, mock_transcript(example, invert=mock == "invert"))
            else:
                g = gateway
            return await evaluate_one(example, conf, g, embedding_model_id)

    tasks = [worker(ex, conf) for conf in grid for ex in examples]
    return list(await asyncio.gather(*tasks))


def write_outputs(records: list[EvalRecord], report: EvalReport, out_dir: Path) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    records_path = out_dir / "records.jsonl"
    with open(records_path, "w", encoding="utf-8") as handle:
        for rec in records:
            handle.write(json.dumps(rec.to_dict(), ensure_ascii=False) + "\n")
    with open(out_dir / "report.json", "w", encoding="utf-8") as handle:
        json.dump(report.to_dict(), handle, indent=2)
    return records_path


def _split_flag(value: str) -> list[str]:
    return [item.strip() for item in value.split(",") if item.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tablecheck-bench",
        description="Offline claim-verification evaluation over a dataset and config grid.",
    )
    parser.add_argument("--dataset", required=True, help=f"dataset JSONL path, or '{BUNDLED}'")
    parser.add_argument("--models", default=None, help="comma-separated model ids")
    parser.add_argument("--formats", default=TableFormat.NATURALIZED.value)
    parser.add_argument("--techniques", default=PromptingTechnique.CHAIN_OF_THOUGHT.value)
    parser.add_argument("--strategies", default=Strategy.DIRECT.value)
    parser.add_argument("--limit", type=int, default=None)
    parser.add_argument("--concurrency", type=int, default=4)
    parser.add_argument("--mock", choices=["echo", "invert"], default=None)
    parser.add_argument("--out", default="bench-results")
    parser.add_argument("--base-url", default=None, help="inference backend (real mode)")
    parser.add_argument("--config", default=None, help="service config file")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    config = load_config(args.config)
    if args.base_url:
        config.inference_base_url = args.base_url

    try:
        if args.dataset == BUNDLED:
            from importlib import resources

            with resources.as_file(
                resources.files("tablecheck").joinpath("assets/examples.jsonl")
            ) as path:
                examples = load_dataset(path)
        else:
            examples = load_dataset(args.dataset)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot read dataset: {exc}", file=sys.stderr)
        return 2
    if args.limit is not None:
        examples = examples[: args.limit]

    registry = ModelRegistry(config.models)
    model_ids = _split_flag(args.models) if args.models else [config.default_model_id]
    try:
        grid = [
            EvalConfiguration(m, TableFormat(f), PromptingTechnique(t), Strategy(s))
            for m, f, t, s in product(
                model_ids,
                _split_flag(args.formats),
                _split_flag(args.techniques),
                _split_flag(args.strategies),
            )
        ]
    except ValueError as exc:
        print(f"error: bad grid value: {exc}", file=sys.stderr)
        return 2

    async def run() -> list[EvalRecord]:
        if args.mock is not None:
            return await run_eval(
                examples,
                grid,
                concurrency=args.concurrency,
                mock=args.mock,
                registry=registry,
                embedding_model_id=config.embedding_model_id,
            )
        from .gateway import InferenceGateway

        async with InferenceGateway(
            registry,
            config.inference_base_url,
            total_timeout_s=config.total_timeout_s,
            stall_timeout_s=config.stall_timeout_s,
            connection_cap=config.connection_cap,
            retry_attempts=config.retry_attempts,
            bearer_token=config.bearer_token,
        ) as gateway:
            return await run_eval(
                examples,
                grid,
                concurrency=args.concurrency,
                gateway=gateway,
                embedding_model_id=config.embedding_model_id,
            )

    records = asyncio.run(run())
    report = summarize(records)
    records_path = write_outputs(records, report, Path(args.out))

    recounted = recount_accuracy(records_path)
    if abs(recounted - report.accuracy) > 1e-12:
        print("error: report accuracy disagrees with records recount", file=sys.stderr)
        return 3

    print(f"examples={len(examples)} configurations={len(grid)} runs={report.total}")
    print(f"accuracy={report.accuracy:.3f} confusion={report.confusion}")
    for key, bucket in report.per_configuration.items():
        print(f"  {key}: accuracy={bucket['accuracy']:.3f} ({bucket['correct']}/{bucket['total']})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
