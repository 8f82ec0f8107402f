"""Line-oriented reports: a ``#`` header, then one record per line."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

from .twisting import TwistReport

# fields printed without their key in the text format, per record kind
POSITIONAL = {
    "claim": ("id", "status"),
    "witness": ("claim",),
    "class": ("index",),
    "component": ("index",),
}


def fmt(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(fmt(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ",".join(f"{k}:{fmt(v)}" for k, v in value.items()) + "}"
    text = str(value)
    return text.replace(" ", "_") if text else "-"


def file_digest(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass
class Report:
    command: str
    meta: list[tuple[str, Any]] = field(default_factory=list)
    inputs: list[Path] = field(default_factory=list)
    records: list[tuple[str, list[tuple[str, Any]]]] = field(default_factory=list)

    def add(self, kind: str, **fields: Any) -> None:
        self.records.append((kind, list(fields.items())))

    def add_claims(self, reports: Iterable[TwistReport]) -> None:
        for r in reports:
            self.add("claim", id=r.claim, status="PASS" if r.passing else "FAIL",
                     instances=r.instances)
            for label, detail in r.failures:
                self.add("witness", claim=r.claim, instance=label, detail=detail)

    def header(self) -> list[str]:
        lines = [f"# torsors {self.command}"]
        for path in self.inputs:
            lines.append(f"# input {Path(path).name} sha256={file_digest(path)}")
        for k, v in self.meta:
            lines.append(f"# {k}={fmt(v)}")
        return lines

    def render(self, style: str = "text") -> str:
        lines = self.header()
        for kind, fields in self.records:
            if style == "machine":
                lines.append(" ".join([f"record={kind}"] + [f"{k}={fmt(v)}" for k, v in fields]))
            else:
                pos = POSITIONAL.get(kind, ())
                head = [fmt(v) for k, v in fields if k in pos]
                rest = [f"{k}={fmt(v)}" for k, v in fields if k not in pos]
                lines.append(" ".join([kind.upper()] + head + rest))
        return "\n".join(lines) + "\n"


def emit_report(report: Report, style: str = "text") -> str:
    return report.render(style)
