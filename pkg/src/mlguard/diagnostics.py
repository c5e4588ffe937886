"""Diagnostics, quickfixes, the code registry, and report rendering."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources

from mlguard.span import SourceSpan

SEVERITIES = ("error", "warning", "info")


@dataclass(frozen=True)
class Quickfix:
    span: SourceSpan
    replacement: str
    description: str


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: str
    span: SourceSpan
    message: str
    explanation: str = field(default="", repr=False)
    suggestions: tuple[Quickfix, ...] = ()

    @property
    def is_error(self) -> bool:
        return self.severity == "error"

    def sort_key(self) -> tuple:
        return (self.span.file, self.span.start_byte, self.code, self.span.end_byte, self.message)


@dataclass(frozen=True)
class RegistryEntry:
    code: str
    severity: str
    summary: str
    explanation: str


class UnknownCode(KeyError):
    pass


def parse_registry(text: str) -> dict[str, RegistryEntry]:
    """Parse the registry format: ``== CODE severity`` headers, a ``summary:`` line, free text."""
    entries: dict[str, RegistryEntry] = {}
    header = None
    body: list[str] = []

    def flush() -> None:
        if header is None:
            return
        code, severity = header
        lines = list(body)
        summary = ""
        if lines and lines[0].startswith("summary:"):
            summary = lines.pop(0)[len("summary:"):].strip()
        entries[code] = RegistryEntry(code, severity, summary, "\n".join(lines).strip())

    for line in text.splitlines():
        if line.startswith("== "):
            flush()
            parts = line[3:].split()
            if len(parts) != 2 or parts[1] not in SEVERITIES:
                raise ValueError(f"malformed registry header: {line!r}")
            header = (parts[0], parts[1])
            body = []
        elif header is not None:
            body.append(line)
    flush()
    return entries


@lru_cache(maxsize=None)
def registry() -> dict[str, RegistryEntry]:
    text = (resources.files("mlguard") / "data" / "diagnostics.registry").read_text(encoding="utf-8")
    return parse_registry(text)


def lookup(code: str) -> RegistryEntry:
    try:
        return registry()[code]
    except KeyError:
        raise UnknownCode(code) from None


def make(code: str, span: SourceSpan, message: str, suggestions=()) -> Diagnostic:
    entry = lookup(code)
    return Diagnostic(code, entry.severity, span, message, entry.explanation, tuple(suggestions))


def escalate(diag: Diagnostic) -> Diagnostic:
    """Warnings become errors (``--deny-warnings``)."""
    return replace(diag, severity="error") if diag.severity == "warning" else diag


# ---------------------------------------------------------------- rendering


def render_human(diag: Diagnostic) -> str:
    s = diag.span
    lines = [f"{s.file}:{s.start_line}:{s.start_col}: {diag.severity}[{diag.code}]: {diag.message}"]
    lines.extend(f"  help: {fix.description}" for fix in diag.suggestions)
    return "\n".join(lines)


def _escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace("\t", "\\t").replace("\n", "\\n")


def render_record(diag: Diagnostic) -> str:
    s = diag.span
    fields = [
        s.file, str(s.start_line), str(s.start_col), str(s.end_line), str(s.end_col),
        diag.code, diag.severity, diag.message, str(len(diag.suggestions)),
    ]
    fields.extend(fix.description for fix in diag.suggestions)
    return "\t".join(_escape(f) for f in fields)
