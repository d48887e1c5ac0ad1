"""Service entry point: ``uslt-sidecar --model MODEL [--record DIR]`` or
``uslt-sidecar --replay DIR``."""

from __future__ import annotations

import argparse

from .app import create_app


def main() -> None:
    parser = argparse.ArgumentParser(description="Masked-LM inference sidecar")
    parser.add_argument("--model", help="Fill-mask model name or path")
    parser.add_argument("--port", type=int, default=8900)
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--record", metavar="DIR", help="Record every exchange to DIR")
    parser.add_argument("--replay", metavar="DIR", help="Serve recorded exchanges from DIR")
    args = parser.parse_args()
    if not args.model and not args.replay:
        parser.error("either --model or --replay is required")

    import uvicorn

    app = create_app(
        model_name=args.model, record_dir=args.record, replay_dir=args.replay
    )
    uvicorn.run(app, host=args.host, port=args.port)


if __name__ == "__main__":
    main()
