"""
Command reports.

JSON output is canonical (sorted keys, fixed separators) and carries a
sha256 over its own content, so two runs on the same inputs produce the
same bytes. Wall-clock timing only appears in the text rendering.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from . import __version__

OK = "✓"
FAIL = "✗"


def mark(ok: bool) -> str:
    """Check mark for a passed or failed check."""
    return OK if ok else FAIL


def canonical_json(payload: dict) -> str:
    """Sorted-key JSON, the form that gets hashed."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)


@dataclass
class Report:
    """Summary lines plus JSON results of one command run."""

    command: str
    inputs: dict
    results: dict = field(default_factory=dict)
    summary: List[str] = field(default_factory=list)
    elapsed: Optional[float] = None
    version: str = __version__
    failed: bool = False

    def line(self, text: str) -> None:
        """Append a plain summary line."""
        self.summary.append(text)

    def check(self, ok: bool, text: str) -> None:
        """Append a marked line; any failed check fails the run."""
        self.failed = self.failed or not ok
        self.summary.append(f"{mark(ok)} {text}")

    def payload(self) -> dict:
        """Everything the hash covers."""
        return {"command": self.command, "inputs": self.inputs, "results": self.results, "version": self.version}

    def determinism_hash(self) -> str:
        """sha256 of the canonical payload."""
        return hashlib.sha256(canonical_json(self.payload()).encode("utf-8")).hexdigest()

    def to_json(self) -> str:
        """Canonical JSON with the hash appended."""
        body = self.payload()
        body["determinism_hash"] = self.determinism_hash()
        return canonical_json(body) + "\n"

    def to_text(self) -> str:
        """Human-readable rendering, timing included."""
        out = [f"{self.command} (translated-tori {self.version})"]
        for key, value in self.inputs.items():
            if value is not None:
                out.append(f"  {key}: {value}")
        out.append("")
        out.extend(self.summary)
        out.append("")
        if self.elapsed is not None:
            out.append(f"Elapsed: {self.elapsed:.2f}s")
        out.append(f"Hash: {self.determinism_hash()}")
        return "\n".join(out) + "\n"

    def render(self, fmt: str) -> str:
        """Render as "json" or "text"."""
        return self.to_json() if fmt == "json" else self.to_text()

    def write(self, fmt: str, out: Optional[Path] = None) -> str:
        """Render and, when out is given, write the file too."""
        text = self.render(fmt)
        if out is not None:
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(text, encoding="utf-8")
        return text
