"""Per-column statistics for CSV files and the ``.profile`` file format."""
from __future__ import annotations

import csv
import math
from collections import Counter
from dataclasses import dataclass, replace
from pathlib import Path

from mlguard._scan import Cursor, ScanError, quote, scan_line
from mlguard.profiler.schema import SchemaMeta
from mlguard.profiler.stats import detect_normalization, entropy

MISSING_MARKERS = frozenset({"", "NA"})


class ProfileError(ValueError):
    pass


@dataclass(frozen=True)
class ColumnProfile:
    name: str
    inferred_kind: str  # numeric | categorical | unknown
    row_count: int
    missing_count: int
    distinct_count: int
    min: float | None = None
    max: float | None = None
    mean: float | None = None
    std: float | None = None  # population standard deviation
    value_counts: dict[str, int] | None = None
    entropy_bits: float = 0.0
    normalization: str = "none"
    ordered: bool = False
    order: tuple[str, ...] | None = None
    semantic_category: str | None = None
    unit: str | None = None


@dataclass(frozen=True)
class DataProfile:
    source: str
    row_count: int
    columns: tuple[ColumnProfile, ...] = ()
    label_column: str | None = None

    def column(self, name: str) -> ColumnProfile | None:
        return next((c for c in self.columns if c.name == name), None)


def _as_number(text: str) -> float | None:
    try:
        v = float(text)
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def _profile_column(name: str, counts: Counter, rows: int, missing: int, schema, keep_counts: bool) -> ColumnProfile:
    meta = schema.get(name) if schema is not None else None
    present = rows - missing
    numbers = {v: _as_number(v) for v in counts}
    if meta is not None and meta.kind is not None:
        kind = meta.kind if present else "unknown"
        if kind == "numeric":
            bad = next((v for v, n in numbers.items() if n is None), None)
            if bad is not None:
                raise ProfileError(f"column {name} is declared numeric but contains {bad!r}")
    elif present == 0:
        kind = "unknown"
    elif all(n is not None for n in numbers.values()):
        kind = "numeric"
    else:
        kind = "categorical"

    stats: dict = {}
    if kind == "numeric":
        values = [(numbers[v], c) for v, c in counts.items()]
        mean = math.fsum(x * c for x, c in values) / present
        var = math.fsum(c * (x - mean) ** 2 for x, c in values) / present
        stats = dict(
            min=min(x for x, _ in values), max=max(x for x, _ in values), mean=mean, std=math.sqrt(var),
        )
    value_counts = dict(sorted(counts.items())) if kind == "categorical" or keep_counts else None
    col = ColumnProfile(
        name=name,
        inferred_kind=kind,
        row_count=rows,
        missing_count=missing,
        distinct_count=len(counts),
        value_counts=value_counts,
        entropy_bits=entropy(counts.values()) if present else 0.0,
        ordered=bool(meta and meta.ordered),
        order=meta.order if meta else None,
        semantic_category=meta.semantic_category if meta else None,
        unit=meta.unit if meta else None,
        **stats,
    )
    if kind == "numeric" and present >= 2:
        col = replace(col, normalization=detect_normalization(col))
    return col


def profile_table(rows, schema: SchemaMeta | None = None, source: str = "", label: str | None = None) -> DataProfile:
    """Profile tabular rows; the first row is the header.

    Empty cells and ``NA`` are missing. A column is numeric when every present
    cell parses as a finite number; the schema's ``kind`` overrides inference.
    """
    it = iter(rows)
    try:
        header = next(it)
    except StopIteration:
        raise ProfileError("empty file: no header row") from None
    if not header:
        raise ProfileError("empty header row")
    width = len(header)
    counts = [Counter() for _ in header]
    missing = [0] * width
    n = 0
    for lineno, row in enumerate(it, start=2):
        if len(row) != width:
            raise ProfileError(f"row {lineno} has {len(row)} fields, expected {width}")
        n += 1
        for i, cell in enumerate(row):
            if cell in MISSING_MARKERS:
                missing[i] += 1
            else:
                counts[i][cell] += 1
    if label is not None and label not in header:
        raise ProfileError(f"label column {label} is not in the header")
    columns = tuple(
        _profile_column(name, counts[i], n, missing[i], schema, name == label) for i, name in enumerate(header)
    )
    return DataProfile(source, n, columns, label)


def profile_csv(path, schema: SchemaMeta | None = None, label: str | None = None) -> DataProfile:
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as fh:
        return profile_table(csv.reader(fh), schema, str(path), label)


# ---------------------------------------------------------------- .profile files


def _num(v: float) -> str:
    return repr(float(v))


def format_profile(profile: DataProfile) -> str:
    out = [f"profile {quote(profile.source)}", f"rows {profile.row_count}"]
    if profile.label_column is not None:
        out.append(f"label {quote(profile.label_column)}")
    for c in profile.columns:
        out.append(f"column {quote(c.name)} {{")
        out.append(f"  kind = {c.inferred_kind}")
        out.append(f"  ordered = {'true' if c.ordered else 'false'}")
        if c.order is not None:
            out.append("  order = (" + ", ".join(quote(v) for v in c.order) + ")")
        if c.semantic_category is not None:
            out.append(f"  category = {quote(c.semantic_category)}")
        if c.unit is not None:
            out.append(f"  unit = {quote(c.unit)}")
        out.append(f"  rows = {c.row_count}")
        out.append(f"  missing = {c.missing_count}")
        out.append(f"  distinct = {c.distinct_count}")
        for key in ("min", "max", "mean", "std"):
            v = getattr(c, key)
            if v is not None:
                out.append(f"  {key} = {_num(v)}")
        out.append(f"  entropy = {_num(c.entropy_bits)}")
        out.append(f"  normalization = {c.normalization}")
        for value, count in (c.value_counts or {}).items():
            out.append(f"  count {quote(value)} = {count}")
        out.append("}")
    return "\n".join(out) + "\n"


_INT_FIELDS = {"rows": "row_count", "missing": "missing_count", "distinct": "distinct_count"}
_FLOAT_FIELDS = {"min": "min", "max": "max", "mean": "mean", "std": "std", "entropy": "entropy_bits"}


def parse_profile(text: str) -> DataProfile:
    source, rows, label = None, None, None
    columns: list[ColumnProfile] = []
    current: dict | None = None
    try:
        for lineno, line in enumerate(text.splitlines(), start=1):
            toks = scan_line(line, lineno)
            if not toks:
                continue
            cur = Cursor(toks, lineno)
            if current is None:
                if cur.accept("profile"):
                    source = cur.take("text", "source path").value
                elif cur.accept("rows"):
                    rows = cur.take("number", "row count").value
                elif cur.accept("label"):
                    label = cur.take("text", "label column").value
                elif cur.accept("column"):
                    current = {"name": cur.take("text", "column name").value}
                    cur.expect("{")
                else:
                    raise ScanError(lineno, f"unknown entry '{toks[0].text}'")
                cur.end()
                continue
            if cur.accept("}"):
                cur.end()
                current.setdefault("inferred_kind", "unknown")
                for key in ("row_count", "missing_count", "distinct_count"):
                    if key not in current:
                        raise ScanError(lineno, f"column {current['name']} lacks {key}")
                columns.append(ColumnProfile(**current))
                current = None
                continue
            if cur.accept("count"):
                value = cur.take("text", "value").value
                cur.expect("=")
                current.setdefault("value_counts", {})[value] = cur.take("number", "count").value
            else:
                key = cur.take("ident", "field name").text
                cur.expect("=")
                if key == "kind":
                    current["inferred_kind"] = cur.take("ident", "column kind").text
                elif key == "normalization":
                    current["normalization"] = cur.take("ident", "normalization").text
                elif key == "ordered":
                    current["ordered"] = cur.literal()
                elif key == "order":
                    cur.expect("(")
                    vals = [cur.take("text", "text literal").value]
                    while cur.accept(","):
                        vals.append(cur.take("text", "text literal").value)
                    cur.expect(")")
                    current["order"] = tuple(vals)
                elif key in ("category", "unit"):
                    current["semantic_category" if key == "category" else "unit"] = cur.take("text", key).value
                elif key in _INT_FIELDS:
                    current[_INT_FIELDS[key]] = cur.take("number", key).value
                elif key in _FLOAT_FIELDS:
                    current[_FLOAT_FIELDS[key]] = float(cur.take("number", key).value)
                else:
                    raise ScanError(lineno, f"unknown column field '{key}'")
            cur.end()
    except (ScanError, TypeError) as exc:
        raise ProfileError(str(exc)) from None
    if current is not None:
        raise ProfileError(f"column {current['name']} is missing its closing '}}'")
    if source is None or rows is None:
        raise ProfileError("profile lacks its 'profile' or 'rows' header")
    return DataProfile(source, rows, tuple(columns), label)


def load_profile(path) -> DataProfile:
    return parse_profile(Path(path).read_text(encoding="utf-8"))
