"""Run manifests: what a build was made from, for reproducing it later."""
from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from datetime import datetime, timezone

from mlguard.apispec import ApiSpec, format_literal
from mlguard.checker.resolve import ResolvedProgram
from mlguard.codegen.backend import BackendTemplate
from mlguard.dsl import ast

TIMESTAMP_ENV = "MLGUARD_TIMESTAMP"


@dataclass(frozen=True)
class RunManifest:
    pipeline: str
    source_sha256: str
    specs: tuple[tuple[str, str, str], ...]  # (name, version, sha256)
    backend: tuple[str, str, str]
    profiles: tuple[tuple[str, str], ...]  # (path, sha256)
    seed: int | None
    requirements: tuple[tuple[str, str, float], ...]
    created: str


def sha256(data: bytes | str) -> str:
    return hashlib.sha256(data.encode("utf-8") if isinstance(data, str) else data).hexdigest()


def default_timestamp() -> str:
    return os.environ.get(TIMESTAMP_ENV) or datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def emit_run_manifest(
    program: ResolvedProgram,
    source: bytes | str,
    specs: list[ApiSpec],
    backend: BackendTemplate,
    profiles: dict[str, bytes] | None = None,
    timestamp: str | None = None,
) -> RunManifest:
    stmts = [rs.stmt for rs in program.statements]
    seed = next((s.seed.value for s in stmts if isinstance(s, ast.Split) and s.seed is not None), None)
    reqs = tuple((s.metric.text, s.op, s.threshold.value) for s in stmts if isinstance(s, ast.Require))
    return RunManifest(
        pipeline=program.ast.name.text,
        source_sha256=sha256(source),
        specs=tuple((s.name, s.version, s.digest) for s in specs),
        backend=(backend.name, backend.version, backend.digest),
        profiles=tuple((path, sha256(data)) for path, data in sorted((profiles or {}).items())),
        seed=seed,
        requirements=reqs,
        created=timestamp or default_timestamp(),
    )


def format_manifest(m: RunManifest) -> str:
    lines = [f"pipeline = {m.pipeline}", f"source_sha256 = {m.source_sha256}"]
    lines += [f"spec = {name} {version or '-'} {digest}" for name, version, digest in m.specs]
    lines.append(f"backend = {m.backend[0]} {m.backend[1]} {m.backend[2]}")
    lines += [f"profile = {path} {digest}" for path, digest in m.profiles]
    lines.append(f"seed = {'none' if m.seed is None else m.seed}")
    lines += [f"requirement = {metric} {op} {format_literal(t)}" for metric, op, t in m.requirements]
    lines.append(f"created = {m.created}")
    return "\n".join(lines) + "\n"


def parse_manifest(text: str) -> RunManifest:
    fields: dict[str, list[str]] = {}
    for line in text.splitlines():
        if not line.strip():
            continue
        key, sep, value = line.partition(" = ")
        if not sep:
            raise ValueError(f"malformed manifest line: {line!r}")
        fields.setdefault(key, []).append(value)

    def one(key: str) -> str:
        if len(fields.get(key, [])) != 1:
            raise ValueError(f"manifest needs exactly one {key} entry")
        return fields[key][0]

    def split3(v: str) -> tuple[str, str, str]:
        name, version, digest = v.rsplit(" ", 2)
        return name, "" if version == "-" else version, digest

    reqs = []
    for v in fields.get("requirement", []):
        metric, op, t = v.split(" ")
        reqs.append((metric, op, float(t)))
    seed = one("seed")
    return RunManifest(
        pipeline=one("pipeline"),
        source_sha256=one("source_sha256"),
        specs=tuple(split3(v) for v in fields.get("spec", [])),
        backend=split3(one("backend")),
        profiles=tuple(tuple(v.rsplit(" ", 1)) for v in fields.get("profile", [])),
        seed=None if seed == "none" else int(seed),
        requirements=tuple(reqs),
        created=one("created"),
    )
