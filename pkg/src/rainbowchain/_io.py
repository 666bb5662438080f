"""CSV/JSON helpers shared by the data containers and the command line."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Iterable, Mapping, Sequence


def fmt(v) -> str:
    if isinstance(v, (int,)) and not isinstance(v, bool):
        return str(v)
    if isinstance(v, str):
        return v
    return f"{float(v):.17g}"


def config_comment(config: Mapping | None) -> str | None:
    if not config:
        return None
    return "# " + " ".join(f"{k}={config[k]}" for k in sorted(config))


def csv_text(
    header: Sequence[str], rows: Iterable[Sequence], comment: str | None = None
) -> str:
    buf = io.StringIO()
    if comment:
        buf.write(comment.rstrip("\n") + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([fmt(v) for v in r])
    return buf.getvalue()


def emit(text: str, path: str | Path | None) -> str:
    if path is not None:
        Path(path).write_text(text)
    return text


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def read_csv_rows(path: str | Path) -> tuple[list[str], list[list[str]]]:
    lines = [l for l in Path(path).read_text().splitlines() if l and not l.startswith("#")]
    rows = list(csv.reader(lines))
    return rows[0], rows[1:]
