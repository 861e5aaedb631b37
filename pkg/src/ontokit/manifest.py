"""Run manifests: the reproducibility envelope around every command.

A manifest records what was run (command + config snapshot), over which
bytes (sha256 per input file), with which seed and tool version, and when.
Reports embed exactly one manifest; rerunning with identical inputs and
seed must reproduce identical artifacts.
"""

from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


@dataclass
class RunManifest:
    command: str
    config: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)  # path -> sha256
    seed: int | None = None
    tool_version: str = __version__
    started_at: float = field(default_factory=time.time)
    finished_at: float | None = None

    def add_input(self, path) -> None:
        path = Path(path)
        self.inputs[str(path)] = sha256_file(path)

    def finish(self) -> "RunManifest":
        self.finished_at = time.time()
        return self

    def to_json(self) -> dict:
        return {
            "manifest": "run",
            "version": 1,
            "command": self.command,
            "config": self.config,
            "inputs": self.inputs,
            "seed": self.seed,
            "tool_version": self.tool_version,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
        }

    def write(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2) + "\n",
                              encoding="utf-8")
