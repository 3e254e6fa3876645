"""Structured analysis reports: ordered stages of plain values, text and JSON renderings."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .polyring import Poly, format_poly, format_scalar

FORMAT_VERSION = 1


def plain(value):
    """Convert polynomials, scalars, tuples and dataclass-like values to JSON-ready data."""
    if isinstance(value, Poly):
        return format_poly(value)
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    if hasattr(value, "value") and hasattr(value, "name"):  # enum
        return str(value.value)
    return format_scalar(value)


def digest_bytes(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


@dataclass
class AnalysisReport:
    command: str
    input_digest: str = ""
    stages: list = field(default_factory=list)
    verdicts: dict = field(default_factory=dict)
    timing: dict = None

    def add(self, stage, /, **values):
        self.stages.append((stage, {k: plain(v) for k, v in values.items()}))

    def add_error(self, name, exc):
        self.stages.append((name, {"error": type(exc).__name__, "message": str(exc)}))

    def stage(self, name):
        for n, v in self.stages:
            if n == name:
                return v
        raise KeyError(name)

    def verdict(self, key, value):
        self.verdicts[key] = plain(value)

    def to_dict(self):
        out = {
            "format": FORMAT_VERSION,
            "command": self.command,
            "input_digest": self.input_digest,
            "stages": [{"name": n, "result": v} for n, v in self.stages],
            "verdicts": dict(self.verdicts),
        }
        if self.timing is not None:
            out["timing"] = dict(self.timing)
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    @classmethod
    def from_dict(cls, data):
        if data.get("format") != FORMAT_VERSION:
            raise ValueError(f"unsupported report format {data.get('format')!r}")
        rep = cls(data["command"], data.get("input_digest", ""))
        rep.stages = [(s["name"], s["result"]) for s in data["stages"]]
        rep.verdicts = dict(data["verdicts"])
        rep.timing = data.get("timing")
        return rep

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_text(self):
        lines = [f"command: {self.command}"]
        if self.input_digest:
            lines.append(f"input: {self.input_digest}")
        for name, res in self.stages:
            lines.append(f"[{name}]")
            lines.extend(_text_lines(res, "  "))
        if self.verdicts:
            lines.append("[verdict]")
            lines.extend(_text_lines(self.verdicts, "  "))
        if self.timing:
            lines.append("[timing]")
            lines.extend(f"  {k}: {v:.3f}s" for k, v in self.timing.items())
        return "\n".join(lines) + "\n"

    def render(self, fmt="text"):
        return self.to_json() if fmt == "structured" else self.to_text()


def _text_lines(obj, indent):
    out = []
    for k, v in obj.items():
        if isinstance(v, dict):
            out.append(f"{indent}{k}:")
            out.extend(_text_lines(v, indent + "  "))
        elif isinstance(v, list) and v and all(isinstance(e, str) for e in v) and any(" " in e for e in v):
            out.append(f"{indent}{k}: |")
            out.extend(f"{indent}  {e}" for e in v)
        elif isinstance(v, list) and v and any(isinstance(e, (list, dict)) for e in v):
            out.append(f"{indent}{k}:")
            for e in v:
                if isinstance(e, dict):
                    out.append(f"{indent}  -")
                    out.extend(_text_lines(e, indent + "    "))
                else:
                    out.append(f"{indent}  - {_inline(e)}")
        else:
            out.append(f"{indent}{k}: {_inline(v)}")
    return out


def _inline(v):
    if isinstance(v, list):
        return "(" + ", ".join(_inline(e) for e in v) + ")"
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)
