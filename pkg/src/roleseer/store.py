"""On-disk artifact store shared by the CLI stages and the HTTP service.

Stage outputs are immutable once written: every stage records the hash of
its config (plus its inputs' hashes) in the manifest, and a rerun with an
identical hash is a no-op. JSON is serialized canonically so identical runs
are byte-identical.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def config_hash(obj) -> str:
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()[:16]


class StageError(Exception):
    pass


class Store:
    def __init__(self, root):
        self.root = Path(root)

    # --- manifest -----------------------------------------------------
    @property
    def manifest_path(self) -> Path:
        return self.root / "manifest.json"

    def manifest(self) -> dict:
        if self.manifest_path.exists():
            return json.loads(self.manifest_path.read_text())
        return {"stages": {}}

    def write_manifest(self, manifest: dict) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        self.manifest_path.write_text(json.dumps(manifest, sort_keys=True, indent=1))

    def stage_hash(self, stage: str) -> str | None:
        return self.manifest()["stages"].get(stage, {}).get("config_hash")

    def mark_stage(self, stage: str, cfg_hash: str, extra: dict | None = None) -> None:
        manifest = self.manifest()
        manifest["stages"][stage] = {"config_hash": cfg_hash, **(extra or {})}
        self.write_manifest(manifest)

    def require_stage(self, stage: str) -> None:
        if self.stage_hash(stage) is None:
            raise StageError(
                f"stage '{stage}' has not been run on store {self.root}; "
                f"run `roleseer {stage}` first"
            )

    # --- json / binary helpers ----------------------------------------
    def write_json(self, rel: str, obj) -> None:
        path = self.root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(canonical_json(obj) + "\n")

    def read_json(self, rel: str):
        path = self.root / rel
        if not path.exists():
            raise FileNotFoundError(rel)
        return json.loads(path.read_text())

    def has(self, rel: str) -> bool:
        return (self.root / rel).exists()

    def write_matrix(self, rel: str, matrix: np.ndarray, players: list[str]) -> None:
        path = self.root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        matrix.astype("<f4").tofile(path)
        self.write_json(rel + ".idx.json", {"players": players, "dims": int(matrix.shape[1])})

    def read_matrix(self, rel: str) -> tuple[np.ndarray, list[str]]:
        sidecar = self.read_json(rel + ".idx.json")
        players = sidecar["players"]
        dims = sidecar["dims"]
        flat = np.fromfile(self.root / rel, dtype="<f4")
        return flat.reshape(len(players), dims).astype(np.float64), players
