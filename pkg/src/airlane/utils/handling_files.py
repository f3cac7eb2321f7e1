__all__ = [
    "atomic_write_text",
    "write_json",
    "read_json",
    "write_csv",
    "write_markdown",
    "dumps_json",
]

import json
import os
import tempfile
from pathlib import Path
from typing import Any

import pandas as pd

from ..config import logger


# --------------------------------------------------
def atomic_write_text(path: str | Path, text: str) -> Path:
    """Writes ``text`` to a sibling temp file and renames it over ``path``.

    Readers never see a half written file: either the old content or the
    new one.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(
        dir=path.parent, prefix=f".{path.name}.", suffix=".tmp"
    )
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(tmp_name, path)
    except Exception as e:
        logger.error(f"Error writing {path}: {e}")
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return path


# --------------------------------------------------
def dumps_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"


# --------------------------------------------------
def write_json(path: str | Path, payload: Any) -> Path:
    return atomic_write_text(path, dumps_json(payload))


# --------------------------------------------------
def read_json(path: str | Path) -> Any:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


# --------------------------------------------------
def write_csv(path: str | Path, df: pd.DataFrame, float_format: str = "%.9g") -> Path:
    return atomic_write_text(
        path, df.to_csv(index=False, float_format=float_format, lineterminator="\n")
    )


# --------------------------------------------------
def write_markdown(path: str | Path, sections: list[tuple[str, pd.DataFrame]]) -> Path:
    """Renders (title, table) pairs as one Markdown document."""
    chunks = []
    for title, df in sections:
        chunks.append(f"## {title}\n")
        chunks.append(df.to_markdown(index=False, floatfmt=".4g") + "\n")
    return atomic_write_text(path, "\n".join(chunks))
