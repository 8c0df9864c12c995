"""Shared helpers for the line-oriented text formats."""

from __future__ import annotations

from typing import Iterator


class ParseError(ValueError):
    """Malformed text input; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def content_lines(text: str) -> Iterator[tuple[int, str]]:
    """Yield (line_number, payload) pairs, skipping blanks and '#' comments."""
    for idx, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield idx, line


def parse_floats(line_no: int, line: str, what: str) -> list[float]:
    try:
        return [float(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(line_no, f"expected {what}, got {line!r}") from None


def parse_ints(line_no: int, line: str, what: str) -> list[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(line_no, f"expected {what}, got {line!r}") from None
