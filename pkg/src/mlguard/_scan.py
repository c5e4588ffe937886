"""Line scanner shared by the block-structured file formats (.mlspec, .schema, .mlbackend)."""
from __future__ import annotations

import re
from dataclasses import dataclass

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#.*)
  | (?P<text>"(?:\\.|[^"\\])*")
  | (?P<number>-?\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>->|==|!=|>=|<=|[(){}=,:|;<>.\[\]])
    """,
    re.VERBOSE,
)

_ESCAPES = {"n": "\n", "t": "\t", '"': '"', "\\": "\\"}


class ScanError(ValueError):
    def __init__(self, line: int, reason: str) -> None:
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


@dataclass(frozen=True)
class Lex:
    kind: str  # text | number | ident | punct
    text: str
    col: int

    @property
    def value(self):
        if self.kind == "text":
            return unquote(self.text)
        if self.kind == "number":
            return parse_number(self.text)
        if self.kind == "ident" and self.text in ("true", "false"):
            return self.text == "true"
        return self.text


def parse_number(text: str) -> int | float:
    if re.fullmatch(r"-?\d+", text):
        return int(text)
    return float(text)


def unquote(text: str) -> str:
    body = text[1:-1]
    out = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\" and i + 1 < len(body):
            out.append(_ESCAPES.get(body[i + 1], body[i + 1]))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def quote(value: str) -> str:
    escaped = value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\t", "\\t")
    return f'"{escaped}"'


def scan_line(line: str, lineno: int) -> list[Lex]:
    out: list[Lex] = []
    pos = 0
    while pos < len(line):
        m = _TOKEN_RE.match(line, pos)
        if m is None:
            if line[pos] == '"':
                raise ScanError(lineno, "unterminated text literal")
            raise ScanError(lineno, f"illegal character {line[pos]!r}")
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            out.append(Lex(kind, m.group(), pos + 1))
        pos = m.end()
    return out


class Cursor:
    """Token cursor over one scanned line with helpful failures."""

    def __init__(self, toks: list[Lex], lineno: int) -> None:
        self.toks = toks
        self.i = 0
        self.lineno = lineno

    def peek(self) -> Lex | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind in ("punct", "ident") and tok.text == text

    def accept(self, text: str) -> bool:
        if self.at(text):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Lex:
        tok = self.peek()
        if not self.at(text):
            found = tok.text if tok else "end of line"
            raise ScanError(self.lineno, f"expected '{text}', found '{found}'")
        self.i += 1
        return tok

    def take(self, kind: str, what: str) -> Lex:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            found = tok.text if tok else "end of line"
            raise ScanError(self.lineno, f"expected {what}, found '{found}'")
        self.i += 1
        return tok

    def literal(self):
        tok = self.peek()
        if tok is None:
            raise ScanError(self.lineno, "expected a literal, found 'end of line'")
        if tok.kind in ("text", "number") or (tok.kind == "ident" and tok.text in ("true", "false")):
            self.i += 1
            return tok.value
        raise ScanError(self.lineno, f"expected a literal, found '{tok.text}'")

    def done(self) -> bool:
        return self.i >= len(self.toks)

    def end(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise ScanError(self.lineno, f"unexpected '{tok.text}' at end of declaration")
