from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class SourceSpan:
    """Half-open source region.

    Lines and columns are 1-based (columns count characters); byte offsets are
    0-based into the UTF-8 encoding. ``end_*`` points just past the last character.
    """

    file: str
    start_line: int
    start_col: int
    end_line: int
    end_col: int
    start_byte: int
    end_byte: int

    def contains(self, other: "SourceSpan") -> bool:
        return self.start_byte <= other.start_byte and other.end_byte <= self.end_byte

    def cover(self, other: "SourceSpan") -> "SourceSpan":
        return SourceSpan(
            self.file, self.start_line, self.start_col, other.end_line, other.end_col,
            self.start_byte, other.end_byte,
        )

    def at_end(self) -> "SourceSpan":
        return SourceSpan(
            self.file, self.end_line, self.end_col, self.end_line, self.end_col,
            self.end_byte, self.end_byte,
        )

    def at_start(self) -> "SourceSpan":
        return SourceSpan(
            self.file, self.start_line, self.start_col, self.start_line, self.start_col,
            self.start_byte, self.start_byte,
        )
