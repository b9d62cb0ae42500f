"""Service entry point.

    commons-engine serve --store events.ndjson --bind 0.0.0.0 --port 8000

Environment variables (flags win): COMMONS_BIND, COMMONS_PORT,
COMMONS_STORE, COMMONS_API_KEY.
"""

from __future__ import annotations

import argparse
import os

from ..store import FileStore
from .app import ServiceConfig, serve


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="commons-engine")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("serve", help="run the HTTP service")
    run.add_argument("--bind", default=os.environ.get("COMMONS_BIND", "127.0.0.1"))
    run.add_argument("--port", type=int,
                     default=int(os.environ.get("COMMONS_PORT", "8000")))
    run.add_argument("--store",
                     default=os.environ.get("COMMONS_STORE", "events.ndjson"))
    run.add_argument("--api-key", default=os.environ.get("COMMONS_API_KEY"))
    run.add_argument("--simulation-mode", action="store_true",
                     help="require explicit 'at' on all mutations; no background scheduler")
    run.add_argument("--fsync", action="store_true",
                     help="fsync the event log on every append")

    args = parser.parse_args(argv)
    if args.command == "serve":
        config = ServiceConfig(
            bind=args.bind, port=args.port, store_path=args.store,
            api_key=args.api_key, simulation_mode=args.simulation_mode,
        )
        serve(config, FileStore(args.store, fsync=args.fsync))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
