"""Operational shell: run configuration, artifact manifests, CLI, HTTP API."""

from .config import ENV_PREFIX, ConfigError, RunConfig
from .manifest import (
    ManifestMismatch,
    manifest_path,
    read_manifest,
    sha256_file,
    verify_inputs,
    verify_seed,
    write_manifest,
)

__all__ = [
    "ConfigError", "ENV_PREFIX", "ManifestMismatch", "RunConfig",
    "manifest_path", "read_manifest", "sha256_file", "verify_inputs",
    "verify_seed", "write_manifest",
]
