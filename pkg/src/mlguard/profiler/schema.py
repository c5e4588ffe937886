"""Column metadata files (``.schema``).

::

    column class { kind = categorical; ordered = true; order = ("poor","rich"); category = wealth_band }
    column distance { kind = numeric; unit = "metres" }
"""
from __future__ import annotations

from dataclasses import dataclass, field

from mlguard._scan import Cursor, Lex, ScanError, quote, scan_line

COLUMN_KINDS = ("numeric", "categorical")


@dataclass(frozen=True)
class ColumnMeta:
    kind: str | None = None
    ordered: bool = False
    order: tuple[str, ...] | None = None
    semantic_category: str | None = None
    unit: str | None = None


@dataclass(frozen=True)
class SchemaMeta:
    columns: dict[str, ColumnMeta] = field(default_factory=dict)

    def get(self, name: str) -> ColumnMeta | None:
        return self.columns.get(name)


class SchemaError(ValueError):
    pass


class _Stream(Cursor):
    """Cursor over a whole file; remembers the line of each token."""

    def __init__(self, toks: list[tuple[Lex, int]]) -> None:
        super().__init__([t for t, _ in toks], 0)
        self.lines = [n for _, n in toks]

    def peek(self):
        tok = super().peek()
        self.lineno = self.lines[self.i] if self.i < len(self.lines) else (self.lines[-1] if self.lines else 0)
        return tok


def _value(cur: _Stream):
    if cur.accept("("):
        items: list[str] = []
        if not cur.accept(")"):
            while True:
                items.append(cur.take("text", "a text literal").value)
                if cur.accept(")"):
                    break
                cur.expect(",")
        return tuple(items)
    tok = cur.peek()
    if tok is not None and tok.kind == "ident" and tok.text not in ("true", "false"):
        cur.i += 1
        return tok.text
    return cur.literal()


def parse_schema(source: str) -> SchemaMeta:
    toks: list[tuple[Lex, int]] = []
    try:
        for lineno, line in enumerate(source.splitlines(), start=1):
            toks.extend((t, lineno) for t in scan_line(line, lineno))
        cur = _Stream(toks)
        columns: dict[str, ColumnMeta] = {}
        while cur.peek() is not None:
            cur.expect("column")
            tok = cur.peek()
            if tok is None or tok.kind not in ("ident", "text"):
                raise ScanError(cur.lineno, "expected a column name")
            cur.i += 1
            name = tok.value if tok.kind == "text" else tok.text
            line = cur.lineno
            cur.expect("{")
            fields: dict = {}
            while not cur.accept("}"):
                key = cur.take("ident", "a field name").text
                cur.expect("=")
                if key in fields:
                    raise ScanError(cur.lineno, f"field {key} given twice")
                fields[key] = _value(cur)
                if not cur.at("}"):
                    cur.expect(";")
            if name in columns:
                raise ScanError(line, f"column {name} declared twice")
            columns[name] = _column_meta(name, fields, line)
    except ScanError as exc:
        raise SchemaError(str(exc)) from None
    return SchemaMeta(columns)


def _column_meta(name: str, fields: dict, line: int) -> ColumnMeta:
    unknown = set(fields) - {"kind", "ordered", "order", "category", "unit"}
    if unknown:
        raise ScanError(line, f"column {name}: unknown field {sorted(unknown)[0]}")
    kind = fields.get("kind")
    if kind is not None and kind not in COLUMN_KINDS:
        raise ScanError(line, f"column {name}: kind must be numeric or categorical")
    ordered = fields.get("ordered", False)
    if not isinstance(ordered, bool):
        raise ScanError(line, f"column {name}: ordered must be true or false")
    order = fields.get("order")
    if order is not None and not isinstance(order, tuple):
        raise ScanError(line, f"column {name}: order must be a list of text literals")
    if order is not None and not ordered:
        raise ScanError(line, f"column {name}: order given but the column is not ordered")
    unit = fields.get("unit")
    category = fields.get("category")
    return ColumnMeta(kind, ordered, order, None if category is None else str(category), None if unit is None else str(unit))


def format_schema(schema: SchemaMeta) -> str:
    lines = []
    for name, meta in schema.columns.items():
        parts = []
        if meta.kind:
            parts.append(f"kind = {meta.kind}")
        if meta.ordered:
            parts.append("ordered = true")
        if meta.order is not None:
            parts.append("order = (" + ",".join(quote(v) for v in meta.order) + ")")
        if meta.semantic_category is not None:
            parts.append(f"category = {quote(meta.semantic_category)}")
        if meta.unit is not None:
            parts.append(f"unit = {quote(meta.unit)}")
        label = name if name.isidentifier() else quote(name)
        lines.append(f"column {label} {{ {'; '.join(parts)} }}")
    return "\n".join(lines) + ("\n" if lines else "")
