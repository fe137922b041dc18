"""
Command-line interface.

    eurdyn <task> [--config FILE] [--set key=value ...] [--out PATH] [--workers N] [--json]
    eurdyn figure <2..8> [...]

Exit codes: 0 success, 2 configuration error, 3 computation failure,
4 I/O failure. Failures print a one-line JSON error record on stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import TASKS, ConfigError, apply_overrides, config_from_dict
from .output import write_tables
from .tasks import run_task

log = logging.getLogger("eurdyn")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_COMPUTE = 3
EXIT_IO = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON configuration file")
    common.add_argument("--out", help="output file (directory for figures); stdout if omitted")
    common.add_argument("--workers", type=int, help="worker processes for sweeps")
    common.add_argument("--set", dest="overrides", action="append", default=[],
                        metavar="KEY=VALUE", help="override a config field (dotted path)")
    common.add_argument("--json", action="store_true", help="also emit rows as a JSON array")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="eurdyn", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="task", required=True)
    for task in TASKS:
        p = sub.add_parser(task, parents=[common])
        if task == "figure":
            p.add_argument("figure_id", type=int, help="figure number, 2..8")
    return parser


def _error(kind: str, code: int, exc: BaseException, field: str | None = None) -> int:
    record = {"error": kind, "exit_code": code, "message": str(exc)}
    if field:
        record["field"] = field
    print(json.dumps(record), file=sys.stderr)
    return code


def load_config(args) -> "RunConfig":
    data = {}
    if args.config:
        try:
            text = Path(args.config).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
        try:
            data = json.loads(text) if text.strip() else {}
        except json.JSONDecodeError as exc:
            raise ConfigError(f"malformed JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("top level must be an object")
    data = apply_overrides(data, args.overrides)
    data["task"] = args.task
    if args.task == "figure":
        data.setdefault("figure", {})
        if not isinstance(data["figure"], dict):
            raise ConfigError("expected an object", "figure")
        data["figure"]["id"] = args.figure_id
    if args.workers is not None:
        data["workers"] = args.workers
    if args.out is not None:
        data["output"] = args.out
    return config_from_dict(data)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        cfg = load_config(args)
    except ConfigError as exc:
        return _error("config", EXIT_CONFIG, exc, exc.path)

    try:
        tables = run_task(cfg)
    except ConfigError as exc:
        return _error("config", EXIT_CONFIG, exc, exc.path)
    except (ArithmeticError, ValueError, RuntimeError) as exc:
        return _error("computation", EXIT_COMPUTE, exc)

    try:
        for path in write_tables(tables, cfg, cfg.output, as_json=args.json):
            log.info("wrote %s", path)
    except OSError as exc:
        return _error("io", EXIT_IO, exc)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
