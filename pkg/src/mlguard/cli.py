"""The ``mlguard`` command line: check, build, profile and explain.

Exit codes: 0 clean, 1 blocking findings (or a refused build, or a skewed
split audit), 2 usage or I/O problems.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from mlguard import diagnostics
from mlguard.apispec import ApiSpec, SpecErrors, load_bundled_specs, load_spec_file, merge_specs
from mlguard.checker import CheckReport, check_source
from mlguard.codegen import (
    BackendErrors,
    BackendTemplate,
    RefusalError,
    emit_run_manifest,
    format_manifest,
    generate,
    load_backend_file,
    load_reference_backend,
)
from mlguard.profiler import (
    DEFAULT_THRESHOLD,
    DataProfile,
    ProfileError,
    SchemaError,
    advise,
    audit_split,
    format_audit,
    format_profile,
    load_profile,
    parse_schema,
    profile_csv,
)

BUNDLED_SPEC = "@bundled"
REFERENCE_BACKEND = "@reference"

EXIT_OK, EXIT_FINDINGS, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad input discovered after argument parsing; maps to exit 2."""


def _read_bytes(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _read_text(path: str) -> str:
    try:
        return _read_bytes(path).decode("utf-8")
    except UnicodeDecodeError:
        raise UsageError(f"cannot read {path}: not valid UTF-8") from None


def load_specs(paths: list[str]) -> list[ApiSpec]:
    specs: list[ApiSpec] = []
    for p in paths:
        if p == BUNDLED_SPEC:
            specs.extend(load_bundled_specs())
            continue
        _read_bytes(p)
        try:
            specs.append(load_spec_file(p))
        except SpecErrors as exc:
            raise UsageError(f"invalid spec {p}:\n" + "\n".join(f"  {e}" for e in exc.errors)) from None
    return specs


def _merged(specs: list[ApiSpec]) -> ApiSpec:
    try:
        return merge_specs(specs)
    except SpecErrors as exc:
        raise UsageError("conflicting specs:\n" + "\n".join(f"  {e}" for e in exc.errors)) from None


def load_profiles(paths: list[str]) -> list[DataProfile]:
    out = []
    for p in paths:
        try:
            if p.endswith(".csv"):
                _read_bytes(p)
                out.append(profile_csv(p))
            else:
                out.append(load_profile_checked(p))
        except ProfileError as exc:
            raise UsageError(f"invalid profile {p}: {exc}") from None
    return out


def load_profile_checked(path: str) -> DataProfile:
    _read_bytes(path)
    return load_profile(path)


def load_backend_arg(path: str) -> BackendTemplate:
    try:
        if path == REFERENCE_BACKEND:
            return load_reference_backend()
        _read_bytes(path)
        return load_backend_file(path)
    except BackendErrors as exc:
        raise UsageError(f"invalid backend {path}:\n" + "\n".join(f"  {e}" for e in exc.errors)) from None


def _render(report: CheckReport, fmt: str) -> str:
    render = diagnostics.render_record if fmt == "records" else diagnostics.render_human
    return "".join(render(d) + "\n" for d in report.diagnostics)


def _blocking(report: CheckReport) -> bool:
    return report.error_count > 0


def _check_one(path: str, spec: ApiSpec, args, profiles) -> tuple[str, CheckReport]:
    source = _read_text(path)
    report = check_source(
        source, spec, path,
        contexts=tuple(args.context or ()),
        profiles=profiles,
        strict=args.strict,
        deny_warnings=args.deny_warnings,
    )
    return source, report


# ---------------------------------------------------------------- commands


def cmd_check(args) -> int:
    spec = _merged(load_specs(args.spec))
    profiles = load_profiles(args.profile or [])
    # read every input before printing anything so an I/O failure is not half-reported
    reports = [(path, _check_one(path, spec, args, profiles)[1]) for path in args.files]
    code = EXIT_OK
    for path, report in reports:
        sys.stdout.write(_render(report, args.format))
        if args.format == "human":
            print(f"{path}: {report.error_count} error(s), {report.warning_count} warning(s)", file=sys.stderr)
        if _blocking(report):
            code = EXIT_FINDINGS
    return code


def cmd_build(args) -> int:
    specs = load_specs(args.spec)
    spec = _merged(specs)
    backend = load_backend_arg(args.backend)
    profile_paths = args.profile or []
    profiles = load_profiles(profile_paths)
    source, report = _check_one(args.file, spec, args, profiles)
    sys.stdout.write(_render(report, "human"))
    try:
        text = generate(report.program, report, backend) if report.program is not None else None
    except RefusalError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_FINDINGS
    if text is None:
        print(f"{args.file}: refusing to generate code: the program did not parse", file=sys.stderr)
        return EXIT_FINDINGS
    manifest = emit_run_manifest(
        report.program, source.encode("utf-8"), specs, backend,
        {p: _read_bytes(p) for p in profile_paths},
        timestamp=args.timestamp,
    )
    out_dir = Path(args.out_dir) if args.out_dir else Path(args.file).parent
    name = report.program.ast.name.text
    targets = [(out_dir / f"{name}.out", text), (out_dir / f"{name}.manifest", format_manifest(manifest))]
    written: list[Path] = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for target, content in targets:
            with open(target, "w", encoding="utf-8", newline="") as fh:
                fh.write(content)
            written.append(target)
    except OSError as exc:
        for target in written:
            target.unlink(missing_ok=True)
        raise UsageError(f"cannot write {exc.filename or out_dir}: {exc.strerror or exc}") from None
    for target in written:
        print(f"wrote {target}", file=sys.stderr)
    return EXIT_OK


def _infer_task(profile: DataProfile) -> str:
    label = profile.column(profile.label_column) if profile.label_column else None
    if label is not None and label.inferred_kind == "numeric" and label.distinct_count > 10:
        return "regression"
    return "classification"


def _fmt(v) -> str:
    return "-" if v is None else f"{v:.4g}"


def profile_summary(profile: DataProfile) -> str:
    lines = [f"{profile.source}: {profile.row_count} rows, {len(profile.columns)} columns"]
    header = ("column", "kind", "missing", "distinct", "entropy", "mean", "std", "normalization")
    rows = [header]
    for c in profile.columns:
        rows.append((
            c.name, c.inferred_kind, str(c.missing_count), str(c.distinct_count),
            f"{c.entropy_bits:.4f}", _fmt(c.mean), _fmt(c.std), c.normalization if c.inferred_kind == "numeric" else "-",
        ))
    widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
    lines += ["  " + "  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines)


def cmd_profile(args) -> int:
    if args.csv is None and args.audit_split is None:
        raise UsageError("profile needs a csv file or --audit-split")
    if args.audit_split is not None and args.label is None:
        raise UsageError("--audit-split requires --label")
    schema = None
    if args.schema:
        try:
            schema = parse_schema(_read_text(args.schema))
        except SchemaError as exc:
            raise UsageError(f"invalid schema {args.schema}: {exc}") from None

    def prof(path: str) -> DataProfile:
        _read_bytes(path)
        try:
            return profile_csv(path, schema, args.label)
        except (ProfileError, UnicodeDecodeError) as exc:
            raise UsageError(f"cannot profile {path}: {exc}") from None

    code = EXIT_OK
    if args.csv is not None:
        profile = prof(args.csv)
        out_dir = Path(args.out_dir) if args.out_dir else Path(args.csv).parent
        target = out_dir / (Path(args.csv).stem + ".profile")
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
            target.write_text(format_profile(profile), encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write {target}: {exc.strerror or exc}") from None
        print(profile_summary(profile))
        task = args.task or _infer_task(profile)
        suggestions = advise(task, profile, schema, _merged(load_specs(args.spec or [BUNDLED_SPEC])))
        if suggestions:
            print(f"suggestions ({task}):")
            for s in suggestions:
                print(f"  [{s.topic}] {s.subject}: {s.text}")
        print(f"wrote {target}", file=sys.stderr)
    if args.audit_split is not None:
        full, *splits = (prof(p) for p in args.audit_split)
        try:
            audit = audit_split(full, splits, args.label, args.threshold)
        except ValueError as exc:
            raise UsageError(f"cannot audit split: {exc}") from None
        print(format_audit(audit))
        if audit.verdict != "stratified":
            code = EXIT_FINDINGS
    return code


def cmd_explain(args) -> int:
    try:
        entry = diagnostics.lookup(args.code)
    except diagnostics.UnknownCode:
        raise UsageError(f"unknown diagnostic code {args.code}") from None
    print(f"{entry.code} ({entry.severity}): {entry.summary}")
    if entry.explanation:
        print()
        print(entry.explanation)
    return EXIT_OK


# ---------------------------------------------------------------- argument parsing


def _check_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--spec", action="append", required=True, metavar="FILE",
                   help=f"API spec file (repeatable); {BUNDLED_SPEC} selects the bundled specs")
    p.add_argument("--profile", action="append", metavar="FILE", help="dataset profile (.profile or .csv)")
    p.add_argument("--context", action="append", metavar="TAG", help="execution context tag, e.g. multithreaded")
    p.add_argument("--deny-warnings", action="store_true", help="treat warnings as errors")
    p.add_argument("--strict", action="store_true", help="note lint rules skipped for lack of profiles")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mlguard", description="Check, build and profile ML pipeline programs.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    check = sub.add_parser("check", help="check pipeline files")
    check.add_argument("files", nargs="+", metavar="FILE")
    _check_options(check)
    check.add_argument("--format", choices=("human", "records"), default="human")
    check.set_defaults(run=cmd_check)

    build = sub.add_parser("build", help="check a pipeline and generate code plus a run manifest")
    build.add_argument("file", metavar="FILE")
    _check_options(build)
    build.add_argument("--backend", required=True, metavar="FILE",
                       help=f"backend template file; {REFERENCE_BACKEND} selects the bundled one")
    build.add_argument("--out-dir", metavar="DIR")
    build.add_argument("--timestamp", metavar="T", help="fixed manifest timestamp (also MLGUARD_TIMESTAMP)")
    build.set_defaults(run=cmd_build)

    profile = sub.add_parser("profile", help="profile a csv file and suggest preprocessing")
    profile.add_argument("csv", nargs="?", metavar="CSV")
    profile.add_argument("--schema", metavar="FILE")
    profile.add_argument("--label", metavar="COLUMN")
    profile.add_argument("--task", choices=("classification", "regression"))
    profile.add_argument("--spec", action="append", metavar="FILE", help="specs consulted for suggestions")
    profile.add_argument("--out-dir", metavar="DIR")
    profile.add_argument("--audit-split", nargs=4, metavar=("FULL", "TRAIN", "VAL", "TEST"))
    profile.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    profile.set_defaults(run=cmd_profile)

    explain = sub.add_parser("explain", help="print the long explanation of a diagnostic code")
    explain.add_argument("code", metavar="CODE")
    explain.set_defaults(run=cmd_explain)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except UsageError as exc:
        print(f"mlguard: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        # downstream closed the pipe (e.g. `| head`); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_FINDINGS


if __name__ == "__main__":
    sys.exit(main())
