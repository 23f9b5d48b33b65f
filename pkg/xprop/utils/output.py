"""
Output Manager

Directory creation with caching, plus bookkeeping of every file a run writes
so that the run can close with a manifest (name, size, sha256).
"""

import hashlib
import json
import logging
from pathlib import Path

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"


def file_sha256(path, chunk_size=1 << 16):
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(chunk_size), b""):
            digest.update(chunk)
    return digest.hexdigest()


class OutputManager:
    """Owns the output directory of one run"""

    def __init__(self, root):
        self.root = Path(root)
        self.created_dirs = set()
        self.produced = []

    def ensure_directory(self, path):
        """Ensure directory exists with caching to avoid redundant operations"""
        path = Path(path)
        if path in self.created_dirs or path.exists():
            self.created_dirs.add(path)
            return path
        path.mkdir(parents=True, exist_ok=True)
        logger.debug(f"Created directory {path}")
        self.created_dirs.add(path)
        return path

    def path(self, name):
        """Path of `name` under the root; parent directories are created"""
        target = self.root / name
        self.ensure_directory(target.parent)
        return target

    def register(self, path):
        path = Path(path)
        if path not in self.produced:
            self.produced.append(path)
        return path

    def write_manifest(self):
        """Write manifest.json listing every registered file, sorted by name"""
        entries = []
        for path in sorted(self.produced, key=lambda p: p.relative_to(self.root).as_posix()):
            entries.append(
                {
                    "name": path.relative_to(self.root).as_posix(),
                    "size": path.stat().st_size,
                    "sha256": file_sha256(path),
                }
            )
        manifest = self.path(MANIFEST_NAME)
        with open(manifest, "w", encoding="utf-8", newline="\n") as handle:
            json.dump({"files": entries}, handle, indent=2, sort_keys=True)
            handle.write("\n")
        logger.info(f"Wrote {manifest} ({len(entries)} files)")
        return manifest
