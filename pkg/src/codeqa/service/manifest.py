"""Artifact manifests: checksums and chain verification between pipeline stages."""

import hashlib
import json


class ManifestMismatch(RuntimeError):
    """Downstream artifact was built from different inputs than supplied."""


def sha256_file(path):
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def manifest_path(artifact_path):
    return str(artifact_path) + ".manifest.json"


def write_manifest(artifact_path, kind, config, inputs=None, **extra):
    """Write <artifact>.manifest.json; no timestamps, stable key order."""
    payload = {
        "kind": kind,
        "artifact_sha256": sha256_file(artifact_path),
        "seed": config.seed,
        "config": config.to_dict(),
        "inputs": {
            name: {"path": str(p), "sha256": sha256_file(p)}
            for name, p in (inputs or {}).items()
        },
    }
    payload.update(extra)
    out = manifest_path(artifact_path)
    with open(out, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return payload


def read_manifest(artifact_path):
    try:
        with open(manifest_path(artifact_path), "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        return None


def verify_inputs(artifact_path, expected, force=False):
    """Check that an artifact's recorded inputs match the files supplied now.

    expected: {input name: path}. Missing manifests are tolerated (the
    artifact may be hand-supplied); mismatched checksums raise unless force.
    """
    manifest = read_manifest(artifact_path)
    if manifest is None:
        return []
    problems = []
    for name, path in expected.items():
        recorded = manifest.get("inputs", {}).get(name)
        if recorded is None:
            continue
        actual = sha256_file(path)
        if actual != recorded["sha256"]:
            problems.append(
                "%s: %s was built from %s=%s (sha %s...), now given sha %s..."
                % (
                    "warning" if force else "error",
                    artifact_path,
                    name,
                    recorded["path"],
                    recorded["sha256"][:12],
                    actual[:12],
                )
            )
    if problems and not force:
        raise ManifestMismatch("; ".join(problems))
    return problems


def verify_seed(artifact_path, config, force=False):
    manifest = read_manifest(artifact_path)
    if manifest is None:
        return []
    if manifest.get("seed") != config.seed:
        msg = "%s was produced with seed %r, config says %r" % (
            artifact_path, manifest.get("seed"), config.seed,
        )
        if not force:
            raise ManifestMismatch(msg)
        return [msg]
    return []
