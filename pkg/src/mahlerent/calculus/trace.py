from __future__ import annotations

from dataclasses import dataclass, field

from ..interval import EntropyInterval


class SpecError(ValueError):
    """Structurally invalid system description."""


class HypothesisError(ValueError):
    """A construction's standing hypothesis is violated."""


@dataclass(frozen=True)
class TraceEntry:
    node: str
    kind: str
    rule: str
    citation: str
    values: dict[str, EntropyInterval]
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        out = {
            "node": self.node,
            "kind": self.kind,
            "rule": self.rule,
            "citation": self.citation,
            "values": {k: v.to_json() for k, v in self.values.items()},
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out


@dataclass
class Trace:
    entries: list[TraceEntry] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def add(self, node, kind, rule, citation, notes=(), **values):
        self.entries.append(TraceEntry(node, kind, rule, citation, values, tuple(notes)))

    def warn(self, node: str, message: str):
        self.warnings.append(f"{node}: {message}")
