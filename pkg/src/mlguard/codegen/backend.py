"""Backend template files (``.mlbackend``).

A backend maps every statement kind to a text template. Template bodies are
written as lines starting with ``|``; placeholders use ``{name}`` and literal
braces are doubled. A template may be specialised for one entity, method or
metric by naming it after the construct::

    backend reference version "1.0"
    option true = "True"
    template model {
    | {var} = {entity}({args})
    }
    template model SVC {
    | {var} = SVC({args})
    }
"""
from __future__ import annotations

import hashlib
import string
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from mlguard._scan import Cursor, ScanError, scan_line

COMMON = frozenset({"index", "line", "pipeline"})
PLACEHOLDERS: dict[str, frozenset[str]] = {
    "preamble": frozenset({"pipeline"}),
    "postamble": frozenset({"pipeline"}),
    "load": COMMON | {"var", "path", "schema"},
    "split": COMMON | {"train", "val", "test", "source", "train_ratio", "val_ratio", "test_ratio", "stratify", "seed"},
    "transform": COMMON | {"var", "entity", "args", "fit_on"},
    "apply": COMMON | {"var", "transform", "dataset"},
    "model": COMMON | {"var", "entity", "args"},
    "set": COMMON | {"model", "param", "value"},
    "fit": COMMON | {"model", "dataset", "label"},
    "call": COMMON | {"var", "assign", "model", "method", "dataset", "label"},
    "evaluate": COMMON | {"var", "metric", "model", "dataset", "label"},
    "require": COMMON | {"metric", "op", "threshold"},
}
CONSTRUCTS = tuple(PLACEHOLDERS)
OPTIONS = {"true": "true", "false": "false", "none": "null"}


@dataclass(frozen=True)
class BackendError:
    reason: str
    line: int = 0

    def __str__(self) -> str:
        return f"line {self.line}: {self.reason}" if self.line else self.reason


class BackendErrors(Exception):
    def __init__(self, errors: list[BackendError]) -> None:
        super().__init__("\n".join(str(e) for e in errors))
        self.errors = errors


@dataclass(frozen=True)
class BackendTemplate:
    name: str
    version: str
    templates: dict[tuple[str, str | None], str]
    options: dict[str, str] = field(default_factory=lambda: dict(OPTIONS))
    digest: str = field(default="", compare=False)

    @property
    def preamble(self) -> str:
        return self.templates[("preamble", None)]

    @property
    def postamble(self) -> str:
        return self.templates[("postamble", None)]

    def lookup(self, construct: str, name: str | None = None) -> str:
        if name is not None and (construct, name) in self.templates:
            return self.templates[(construct, name)]
        return self.templates[(construct, None)]


def _fields(text: str) -> list[str]:
    names = []
    try:
        parsed = list(string.Formatter().parse(text))
    except ValueError as exc:
        raise ValueError(f"malformed placeholder ({exc})") from None
    for _, fname, spec, conv in parsed:
        if fname is None:
            continue
        if spec or conv or not fname.isidentifier():
            raise ValueError(f"malformed placeholder {{{fname}{'!' + conv if conv else ''}{':' + spec if spec else ''}}}")
        names.append(fname)
    return names


def load_backend(source: str | bytes) -> BackendTemplate:
    """Parse and validate a backend; raises :class:`BackendErrors` listing every problem."""
    raw = source.encode("utf-8") if isinstance(source, str) else source
    text = raw.decode("utf-8")
    errors: list[BackendError] = []
    name = version = None
    options = dict(OPTIONS)
    templates: dict[tuple[str, str | None], str] = {}
    block: tuple[tuple[str, str | None], int, list[str]] | None = None

    for lineno, line in enumerate(text.splitlines(), start=1):
        if block is not None:
            stripped = line.lstrip()
            if stripped.startswith("|"):
                body = stripped[1:]
                block[2].append(body[1:] if body.startswith(" ") else body)
                continue
            if stripped.rstrip() == "}":
                key, start, lines = block
                body = "\n".join(lines) + "\n" if lines else ""
                if key in templates:
                    errors.append(BackendError(f"template {_key_text(key)} defined twice", start))
                templates[key] = body
                block = None
                continue
            if not stripped or stripped.startswith("#"):
                continue
            errors.append(BackendError("template lines must start with '|'", lineno))
            continue
        try:
            toks = scan_line(line, lineno)
            if not toks:
                continue
            cur = Cursor(toks, lineno)
            if cur.accept("backend"):
                name = cur.take("ident", "backend name").text
                cur.expect("version")
                version = cur.take("text", "version text").value
                cur.end()
            elif cur.accept("option"):
                key = cur.take("ident", "option name").text
                if key not in OPTIONS:
                    raise ScanError(lineno, f"unknown option '{key}'")
                cur.expect("=")
                options[key] = cur.take("text", "option text").value
                cur.end()
            elif cur.accept("template"):
                construct = cur.take("ident", "construct name").text
                if construct not in PLACEHOLDERS:
                    raise ScanError(lineno, f"unknown construct '{construct}'")
                specialised = None
                if not cur.at("{"):
                    specialised = cur.take("ident", "entity, method or metric name").text
                cur.expect("{")
                cur.end()
                block = ((construct, specialised), lineno, [])
            else:
                raise ScanError(lineno, f"unknown declaration '{toks[0].text}'")
        except ScanError as exc:
            errors.append(BackendError(exc.reason, exc.line))
    if block is not None:
        errors.append(BackendError(f"template {_key_text(block[0])} is missing its closing '}}'", block[1]))
    if name is None:
        errors.append(BackendError("missing 'backend <name> version \"<v>\"' header"))
    for construct in CONSTRUCTS:
        if (construct, None) not in templates:
            errors.append(BackendError(f"missing template for construct '{construct}'"))
    for key, body in sorted(templates.items(), key=lambda kv: (kv[0][0], kv[0][1] or "")):
        try:
            used = _fields(body)
        except ValueError as exc:
            errors.append(BackendError(f"template {_key_text(key)}: {exc}"))
            continue
        for f in used:
            if f not in PLACEHOLDERS[key[0]]:
                errors.append(BackendError(f"template {_key_text(key)}: unknown placeholder {{{f}}}"))
    if errors:
        raise BackendErrors(errors)
    return BackendTemplate(name, version, templates, options, hashlib.sha256(raw).hexdigest())


def _key_text(key: tuple[str, str | None]) -> str:
    return key[0] if key[1] is None else f"{key[0]} {key[1]}"


def load_backend_file(path) -> BackendTemplate:
    return load_backend(Path(path).read_bytes())


def bundled_backend_text() -> str:
    return (resources.files("mlguard") / "data" / "reference.mlbackend").read_text(encoding="utf-8")


def load_reference_backend() -> BackendTemplate:
    return load_backend((resources.files("mlguard") / "data" / "reference.mlbackend").read_bytes())
