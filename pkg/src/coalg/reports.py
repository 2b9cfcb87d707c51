"""Pass/fail records returned by the axiom checkers and diagram verifiers."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    witness: int | None = None  # source basis index where the two sides first differ
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    subject: str
    checks: tuple[AxiomCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.ok

    def failures(self) -> list[AxiomCheck]:
        return [c for c in self.checks if not c.passed]

    def format(self) -> str:
        lines = [f"{self.subject}: {'ok' if self.ok else 'FAILED'}"]
        for c in self.checks:
            line = f"  {'pass' if c.passed else 'FAIL'}  {c.name}"
            if not c.passed and c.witness is not None:
                line += f"  (witness: basis index {c.witness})"
            if c.detail:
                line += f"  {c.detail}"
            lines.append(line)
        return "\n".join(lines)


def compare(name: str, lhs, rhs, basis_labels=None) -> AxiomCheck:
    """Compare two LinearMaps with the same source; the witness is the smallest bad column."""
    if lhs == rhs:
        return AxiomCheck(name, True)
    if lhs.shape != rhs.shape:
        return AxiomCheck(name, False, None, f"shape {lhs.shape} vs {rhs.shape}")
    col = min(j for (_, j), _ in (lhs - rhs).nonzero())
    detail = ""
    if basis_labels is not None and col < len(basis_labels):
        detail = f"at {basis_labels[col]}"
    return AxiomCheck(name, False, col, detail)


@dataclass(frozen=True)
class DiagramReport:
    """Outcome of evaluating both legs of a diagram on the same input."""

    name: str
    lhs: tuple
    rhs: tuple
    notes: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def __bool__(self):
        return self.ok

    def format(self, fmt=str) -> str:
        def vec(v):
            return "(" + ", ".join(fmt(x) for x in v) + ")"

        lines = [f"{self.name}: {'commutes' if self.ok else 'DOES NOT COMMUTE'}",
                 f"  lhs {vec(self.lhs)}",
                 f"  rhs {vec(self.rhs)}"]
        lines.extend(f"  {n}" for n in self.notes)
        return "\n".join(lines)
