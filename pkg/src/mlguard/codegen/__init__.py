"""Code generation from checked pipelines, and run manifests."""
from mlguard.codegen.backend import (
    CONSTRUCTS,
    BackendError,
    BackendErrors,
    BackendTemplate,
    load_backend,
    load_backend_file,
    load_reference_backend,
)
from mlguard.codegen.generate import RefusalError, generate
from mlguard.codegen.manifest import RunManifest, emit_run_manifest, format_manifest, parse_manifest

__all__ = [
    "CONSTRUCTS", "BackendError", "BackendErrors", "BackendTemplate", "RefusalError", "RunManifest",
    "emit_run_manifest", "format_manifest", "generate", "load_backend", "load_backend_file",
    "load_reference_backend", "parse_manifest",
]
