from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, NamedTuple


class Witness(NamedTuple):
    index: int
    observed: Any
    expected: Any
    ok: bool = True


@dataclass
class VerificationReport:
    """Outcome of one numerical check.

    ``witnesses`` mixes supporting examples (``ok=True``) and discrepancies
    (``ok=False``); a passing report never carries a discrepancy.
    """

    check_name: str
    passed: bool
    parameters: dict[str, Any] = field(default_factory=dict)
    witnesses: list[Witness] = field(default_factory=list)
    summary_metrics: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.passed and self.discrepancies:
            raise ValueError("a passing report cannot carry discrepancies")

    @property
    def discrepancies(self) -> list[Witness]:
        return [w for w in self.witnesses if not w.ok]

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["witnesses"] = [w._asdict() for w in self.witnesses]
        return d

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        lines = [f"{status} {self.check_name} ({params})"]
        for k, v in self.summary_metrics.items():
            lines.append(f"  {k}: {v}")
        bad = self.discrepancies
        if bad:
            lines.append(f"  discrepancies: {len(bad)}; first: {tuple(bad[0])}")
        return "\n".join(lines)
