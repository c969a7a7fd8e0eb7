"""
TreeTen - Result tables and metadata sidecars

Each table becomes <out>/<name>.csv:

    # config_hash=<sha256>
    col1,col2,...
    ...

plus <out>/<name>.meta.json with the run config and per-run metadata.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)


@dataclass
class Table:
    name: str
    columns: Tuple[str, ...]
    rows: List[Sequence[Any]] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def column(self, name: str) -> List[Any]:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


def _cell(value: Any) -> Any:
    if isinstance(value, (bool, np.bool_)):
        return int(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return value


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, Path):
        return str(value)
    return value


def write_table(out_dir: Path, table: Table, config_hash: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{table.name}.csv"
    with path.open("w", encoding="utf-8", newline="") as fh:
        fh.write(f"# config_hash={config_hash}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([_cell(v) for v in row])
    logger.info(f"📝 wrote {len(table.rows)} rows to {path}")
    return path


def write_metadata(out_dir: Path, name: str, metadata: Dict[str, Any]) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{name}.meta.json"
    path.write_text(json.dumps(_jsonable(metadata), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def read_table(path: Path) -> Tuple[str, List[str], List[List[str]]]:
    """(config hash, columns, rows as strings)."""
    with Path(path).open(encoding="utf-8", newline="") as fh:
        first = fh.readline().strip()
        if not first.startswith("# config_hash="):
            raise ValueError(f"{path} has no config hash line")
        reader = csv.reader(fh)
        columns = next(reader)
        rows = [row for row in reader]
    return first.split("=", 1)[1], columns, rows
