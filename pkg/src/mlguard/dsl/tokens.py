from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from mlguard.span import SourceSpan

KEYWORDS = frozenset(
    {
        "pipeline", "load", "schema", "split", "ratios", "stratify", "seed", "fit", "on",
        "apply", "set", "label", "call", "evaluate", "require",
    }
)


class TokenKind(str, Enum):
    KEYWORD = "keyword"
    IDENTIFIER = "identifier"
    TEXT = "text-literal"
    INT = "int-literal"
    FLOAT = "float-literal"
    BOOL = "bool-literal"
    PUNCT = "punctuation"
    EOF = "end-of-file"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    lexeme: str
    span: SourceSpan

    def describe(self) -> str:
        if self.kind is TokenKind.EOF:
            return "end of file"
        return f"'{self.lexeme}'"


class LexError(Exception):
    def __init__(self, message: str, span: SourceSpan) -> None:
        super().__init__(f"{span.file}:{span.start_line}:{span.start_col}: {message}")
        self.message = message
        self.span = span


_LEX_RE = re.compile(
    r"""
    (?P<newline>\r?\n)
  | (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<text>"(?:\\[^\n]|[^"\\\n])*")
  | (?P<float>-?\d+\.\d+(?:[eE][+-]?\d+)?|-?\d+[eE][+-]?\d+)
  | (?P<int>-?\d+)
  | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>>=|[=,(){}.>])
    """,
    re.VERBOSE,
)


def tokenize(source: str, file: str = "<input>") -> list[Token]:
    """Split pipeline source into tokens; the last token is always end-of-file."""
    tokens: list[Token] = []
    pos = 0
    line, col, byte = 1, 1, 0

    def span_for(text: str) -> SourceSpan:
        # tokens never contain newlines
        n = len(text.encode("utf-8"))
        return SourceSpan(file, line, col, line, col + len(text), byte, byte + n)

    while pos < len(source):
        m = _LEX_RE.match(source, pos)
        if m is None:
            ch = source[pos]
            if ch == '"':
                rest = source[pos:].split("\n", 1)[0]
                raise LexError("unterminated text literal", span_for(rest))
            raise LexError(f"illegal character {ch!r}", span_for(ch))
        group, text = m.lastgroup, m.group()
        if group == "word":
            if text in ("true", "false"):
                kind = TokenKind.BOOL
            elif text in KEYWORDS:
                kind = TokenKind.KEYWORD
            else:
                kind = TokenKind.IDENTIFIER
            tokens.append(Token(kind, text, span_for(text)))
        elif group in ("text", "int", "float", "punct"):
            kind = {
                "text": TokenKind.TEXT, "int": TokenKind.INT,
                "float": TokenKind.FLOAT, "punct": TokenKind.PUNCT,
            }[group]
            tokens.append(Token(kind, text, span_for(text)))
        pos = m.end()
        byte += len(text.encode("utf-8"))
        if group == "newline":
            line, col = line + 1, 1
        else:
            col += len(text)
    tokens.append(Token(TokenKind.EOF, "", SourceSpan(file, line, col, line, col, byte, byte)))
    return tokens
