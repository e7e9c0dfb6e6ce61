"""Check records and the JSON report shared by the library and the CLI."""

import json
from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    status: str  # pass | fail | skip
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "details": self.details}


@dataclass
class Report:
    command: str
    params: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)

    def add(self, name: str, ok, **details) -> Check:
        status = ok if isinstance(ok, str) else ("pass" if ok else "fail")
        c = Check(name, status, details)
        self.checks.append(c)
        return c

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "params": self.params,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, ensure_ascii=True) + "\n"

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for k, v in self.params.items():
            lines.append(f"  {k} = {v}")
        for k, v in self.outputs.items():
            lines.append(f"{k}: {v}")
        for c in self.checks:
            extra = ""
            if c.details:
                extra = "  " + ", ".join(f"{k}={v}" for k, v in c.details.items())
            lines.append(f"[{c.status.upper()}] {c.name}{extra}")
        return "\n".join(lines) + "\n"
