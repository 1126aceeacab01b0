"""Small output helpers shared by the exporters.

Destinations may be paths or open file objects; path failures are re-raised
with the offending path named.
"""

from __future__ import annotations

from pathlib import Path


def write_text(destination, text: str) -> None:
    if hasattr(destination, "write"):
        destination.write(text)
        return
    path = Path(destination)
    try:
        path.write_text(text, newline="\n")
    except OSError as exc:
        raise OSError(f"failed writing {path}: {exc}") from exc


def write_bytes(destination, data: bytes) -> None:
    if hasattr(destination, "write"):
        destination.write(data)
        return
    path = Path(destination)
    try:
        path.write_bytes(data)
    except OSError as exc:
        raise OSError(f"failed writing {path}: {exc}") from exc
