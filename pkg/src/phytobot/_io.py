"""Shared output plumbing: writers accept a path or an open text stream."""

from __future__ import annotations

from contextlib import contextmanager
from pathlib import Path
from typing import IO, Iterator, Union

Destination = Union[str, Path, IO[str]]


@contextmanager
def open_out(dest: Destination) -> Iterator[IO[str]]:
    """Yield a writable text stream for ``dest`` (UTF-8, LF line endings).

    An object with a ``write`` method is yielded as-is and left open;
    anything else is treated as a path.
    """
    if hasattr(dest, "write"):
        yield dest  # type: ignore[misc]
        return
    with Path(dest).open("w", newline="\n", encoding="utf-8") as fh:
        yield fh
