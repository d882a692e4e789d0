"""File helpers shared by the command front end."""

import json
import logging
from pathlib import Path
from typing import Any

from ..config import settings
from ..logic.errors import ScriptError
from ..logic.memory import MemorySignature
from .syntax import parse_signature

logger = logging.getLogger(__name__)


def read_source(file_path: Path) -> str:
    """
    Read a term, equation or signature file.

    Raises:
        ScriptError: If the file cannot be read
    """
    try:
        with open(file_path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise ScriptError(f"Cannot read {file_path}: {e}") from e


def write_json_file(file_path: Path, data: Any, ensure_ascii: bool = False) -> None:
    """
    Write JSON data to a file with consistent formatting.

    Args:
        file_path: Path to write the file
        data: Data to serialize as JSON
        ensure_ascii: Whether to ensure ASCII encoding
    """
    file_path.parent.mkdir(parents=True, exist_ok=True)
    with open(file_path, "w", encoding="utf-8") as f:
        json.dump(data, f, ensure_ascii=ensure_ascii, indent=settings.JSON_INDENT)
        f.write("\n")


def load_signature(source: str | Path | None) -> MemorySignature:
    """
    Resolve a `--signature` value: a `.sig` file, inline `locations ...` text, or the default.
    """
    if source is None:
        return parse_signature(settings.DEFAULT_SIGNATURE)
    text = str(source)
    if text.lstrip().startswith("locations"):
        return parse_signature(text)
    logger.debug(f"Reading signature from {text}")
    return parse_signature(read_source(Path(text)))
