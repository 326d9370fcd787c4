"""Run manifests.

Every CLI run writes a manifest recording the subcommand, full argv,
resolved parameters, master seed, input digests and output files —
enough to replay the run exactly.  Manifests deliberately carry no
timestamps so a replayed run is byte-identical.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from . import __version__


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def build_manifest(subcommand, argv, parameters, inputs, outputs, master_seed=None) -> dict:
    return {
        "tool": "citegraph",
        "version": __version__,
        "subcommand": subcommand,
        "argv": list(argv),
        "parameters": parameters,
        "master_seed": master_seed,
        "inputs": [
            {"path": str(p), "sha256": sha256_file(p)} for p in inputs
        ],
        "outputs": sorted(str(o) for o in outputs),
    }


def write_manifest(out_dir, manifest: dict) -> Path:
    path = Path(out_dir) / "manifest.json"
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=2)
        fh.write("\n")
    return path
