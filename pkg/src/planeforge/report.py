"""Machine-readable run reports."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path


@dataclass
class RunReport:
    command: list[str]
    inputs_digest: dict[str, str] = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    timing: float = 0.0
    exit_code: int = 0

    def add_input(self, path) -> None:
        data = Path(path).read_bytes()
        self.inputs_digest[str(path)] = hashlib.sha256(data).hexdigest()

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        return cls(**json.loads(text))
