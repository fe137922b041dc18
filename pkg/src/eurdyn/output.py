"""
Deterministic CSV / JSON emission.

Floats are written with 17 significant digits, ``.`` as decimal separator
and ``\\n`` line endings. Files are written to a temporary sibling and
renamed into place, so a failed run never leaves a partial file.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from . import __version__
from .config import RunConfig, serialize
from .tasks import Table

__all__ = ["config_hash", "render_csv", "render_json", "atomic_write", "write_tables"]


def config_hash(cfg: RunConfig) -> str:
    # output location does not affect the numbers
    canonical = serialize(cfg).replace(json.dumps(cfg.output), "null")
    return hashlib.sha256(canonical.encode()).hexdigest()


def _num(x: float) -> str:
    return format(float(x), ".17g")


def render_csv(table: Table, cfg: RunConfig) -> str:
    lines = [
        f"# eurdyn {__version__}",
        f"# task: {cfg.task}" + (f" {cfg.figure.id}" if cfg.task == "figure" else ""),
        f"# table: {table.name}",
        f"# config_sha256: {config_hash(cfg)}",
    ]
    lines += [f"# {note}" for note in table.notes]
    lines.append(",".join(table.columns))
    lines += [",".join(_num(v) for v in row) for row in table.data]
    return "\n".join(lines) + "\n"


def render_json(table: Table) -> str:
    rows = [{k: float(_num(v)) for k, v in zip(table.columns, row)} for row in table.data]
    return json.dumps(rows, indent=1) + "\n"


def atomic_write(path: Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def write_tables(tables: list[Table], cfg: RunConfig, out: str | None,
                 as_json: bool = False) -> list[Path]:
    """Write ``tables``; returns the paths written (empty when printing to stdout).

    ``out`` is a file for single-table tasks and a directory for figures
    (one ``<panel>.csv`` per table). ``None`` prints to stdout.
    """
    rendered = [(t, render_csv(t, cfg), render_json(t) if as_json else None) for t in tables]
    if out is None:
        for _, csv_text, json_text in rendered:
            print(json_text if as_json else csv_text, end="")
        return []
    target = Path(out)
    if cfg.task == "figure" or len(tables) > 1:
        target.mkdir(parents=True, exist_ok=True)
        paths = [target / f"{t.name}.csv" for t in tables]
    else:
        paths = [target]
    written = []
    for path, (_, csv_text, json_text) in zip(paths, rendered):
        atomic_write(path, csv_text)
        written.append(path)
        if json_text is not None:
            jpath = path.with_suffix(".json")
            atomic_write(jpath, json_text)
            written.append(jpath)
    return written
