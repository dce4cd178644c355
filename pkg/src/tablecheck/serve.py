"""Console entry point for running the service under uvicorn."""

from __future__ import annotations

import argparse

import uvicorn

from .config import load_config
from .service import create_app


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="tablecheck-serve")
    parser.add_argument("--config", default=None, help="JSON config file")
    parser.add_argument("--host", default=None)
    parser.add_argument("--port", type=int, default=None)
    args = parser.parse_args(argv)

    config = load_config(args.config)
    if args.host:
        config.bind_host = args.host
    if args.port:
        config.bind_port = args.port

    uvicorn.run(create_app(config), host=config.bind_host, port=config.bind_port)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
