"""Startup configuration: JSON file plus environment overrides.

Precedence: built-in defaults (including the packaged model registry) <
config file < ``TABLECHECK_*`` environment variables.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .gateway import ModelSpec


def _packaged_registry() -> dict:
    raw = resources.files("tablecheck").joinpath("assets/models.json").read_text("utf-8")
    return json.loads(raw)


def default_models() -> list[ModelSpec]:
    return [ModelSpec.from_dict(m) for m in _packaged_registry()["models"]]


@dataclass
class AppConfig:
    bind_host: str = "127.0.0.1"
    bind_port: int = 8000
    inference_base_url: str = "http://127.0.0.1:11434"
    bearer_token: str | None = None
    total_timeout_s: float = 300.0
    stall_timeout_s: float = 60.0
    connection_cap: int = 8
    retry_attempts: int = 1
    rate_capacity: int = 10
    rate_window_s: float = 60.0
    max_upload_bytes: int = 10 * 1024 * 1024
    default_model_id: str = "phi4:14b"
    embedding_model_id: str = "nomic-embed-text"
    vision_model_id: str = "granite3.2-vision"
    classical_ocr_command: list[str] = field(
        default_factory=lambda: ["tesseract", "stdin", "stdout", "--psm", "6"]
    )
    models: list[ModelSpec] = field(default_factory=default_models)


_FILE_KEYS = {
    "bind_host": str,
    "bind_port": int,
    "inference_base_url": str,
    "bearer_token": str,
    "total_timeout_s": float,
    "stall_timeout_s": float,
    "connection_cap": int,
    "retry_attempts": int,
    "rate_capacity": int,
    "rate_window_s": float,
    "max_upload_bytes": int,
    "default_model_id": str,
    "embedding_model_id": str,
    "vision_model_id": str,
    "classical_ocr_command": list,
}

_ENV_KEYS = {
    "TABLECHECK_BIND_HOST": ("bind_host", str),
    "TABLECHECK_BIND_PORT": ("bind_port", int),
    "TABLECHECK_INFERENCE_URL": ("inference_base_url", str),
    "TABLECHECK_BEARER_TOKEN": ("bearer_token", str),
    "TABLECHECK_TOTAL_TIMEOUT_S": ("total_timeout_s", float),
    "TABLECHECK_STALL_TIMEOUT_S": ("stall_timeout_s", float),
    "TABLECHECK_CONNECTION_CAP": ("connection_cap", int),
    "TABLECHECK_RATE_CAPACITY": ("rate_capacity", int),
    "TABLECHECK_RATE_WINDOW_S": ("rate_window_s", float),
    "TABLECHECK_MAX_UPLOAD_BYTES": ("max_upload_bytes", int),
    "TABLECHECK_DEFAULT_MODEL": ("default_model_id", str),
    "TABLECHECK_EMBEDDING_MODEL": ("embedding_model_id", str),
    "TABLECHECK_VISION_MODEL": ("vision_model_id", str),
}


def load_config(path: str | Path | None = None) -> AppConfig:
    """Build the effective configuration.

    ``path`` falls back to the ``TABLECHECK_CONFIG`` environment variable;
    with neither set, packaged defaults apply.
    """
    config = AppConfig()

    file_path = path or os.environ.get("TABLECHECK_CONFIG")
    if file_path:
        raw = json.loads(Path(file_path).read_text("utf-8"))
        for key, caster in _FILE_KEYS.items():
            if key in raw and raw[key] is not None:
                setattr(config, key, caster(raw[key]))
        if "models" in raw:
            config.models = [ModelSpec.from_dict(m) for m in raw["models"]]

    for env_name, (key, caster) in _ENV_KEYS.items():
        value = os.environ.get(env_name)
        if value is not None:
            setattr(config, key, caster(value))

    return config
