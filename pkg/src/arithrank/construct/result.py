"""The result type shared by every construction path."""

from __future__ import annotations

from dataclasses import dataclass, field

GENERIC = "GenericSetSpecialization"
SV = "SVConstruction"
CONE = "ConeReduction"
SUM = "Sum"
INTERSECTION = "Intersection"
CITED = "CitedExternal"

TAGS = (GENERIC, SV, CONE, SUM, INTERSECTION, CITED)


@dataclass
class AraResult:
    value: int
    justification: str
    generators: list | None = None
    certificate: object = None
    trace: list = field(default_factory=list)
    detail: dict = field(default_factory=dict)
    children: list = field(default_factory=list)

    def __post_init__(self):
        if self.justification not in TAGS:
            raise ValueError(f"unknown justification {self.justification!r}")
        if self.generators is not None and len(self.generators) != self.value:
            raise ValueError("generator count must equal the value")

    @property
    def constructive(self) -> bool:
        return self.generators is not None

    def to_json(self, certificate_path: str | None = None) -> dict:
        out = {
            "value": self.value,
            "justification": self.justification,
            "generators": [str(g) for g in self.generators] if self.generators is not None else None,
            "trace": list(self.trace),
        }
        if certificate_path is not None:
            out["certificate"] = certificate_path
        if self.detail:
            out["detail"] = self.detail
        if self.children:
            out["children"] = [c.to_json() for c in self.children]
        return out
