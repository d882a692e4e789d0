"""Pydantic models for structured command reports."""

from typing import Literal

from pydantic import BaseModel, Field

Status = Literal["ok", "fail", "error"]

EXIT_CODES: dict[str, int] = {"ok": 0, "fail": 1, "error": 2}


class KindDetails(BaseModel):
    kind: Literal["kind"] = "kind"
    term: str = Field(description="Fully annotated term that was checked")
    dom: str = Field(description="Domain type")
    cod: str = Field(description="Codomain type")
    inferred: str = Field(description="Least decoration: pure, ro or rw")


class ProofDetails(BaseModel):
    kind: Literal["proof"] = "proof"
    script: str = Field(description="Name of the proof script")
    goal: str = Field(description="Equation the script sets out to prove")
    conclusion: str | None = Field(default=None, description="Conclusion of the root proof node")
    top_rule: str = Field(description="Rule applied at the root of the proof")
    labels: list[str] = Field(default_factory=list, description="Step labels found in the proof tree")
    failing_path: str | None = Field(default=None, description="Path of the rejected node, '/' separated")
    reason: str | None = Field(default=None, description="Rejection reason")
    message: str | None = Field(default=None, description="Human-readable rejection detail")


class CounterexampleDetails(BaseModel):
    input: str = Field(description="Input value")
    store: dict[str, str] = Field(description="Initial store")
    lhs_result: str
    lhs_store: dict[str, str]
    rhs_result: str
    rhs_store: dict[str, str]


class ValidationDetails(BaseModel):
    kind: Literal["validation"] = "validation"
    equation: str = Field(description="Equation that was checked")
    mode: Literal["strong", "weak"]
    holds: bool
    cases_checked: int = Field(description="Number of (input, store) pairs evaluated")
    signature: str = Field(description="Signature the check enumerated")
    counterexample: CounterexampleDetails | None = None


class ScriptOutcome(BaseModel):
    script: str
    source: str | None = None
    kernel_accepts: bool
    expected_kernel_accepts: bool
    semantics_holds: bool
    expected_semantics_holds: bool
    failing_path: str | None = None
    reason: str | None = None
    message: str | None = None

    @property
    def as_expected(self) -> bool:
        return (
            self.kernel_accepts == self.expected_kernel_accepts
            and self.semantics_holds == self.expected_semantics_holds
        )


class ReplayDetails(BaseModel):
    kind: Literal["replay"] = "replay"
    scripts: list[ScriptOutcome] = Field(default_factory=list)


class RuleSweepOutcome(BaseModel):
    rule: str
    samples: int
    accepted: int = Field(description="Instantiations the kernel accepted")
    exercised: int = Field(description="Accepted instantiations whose premises hold semantically")
    violations: int = Field(description="Exercised instantiations whose conclusion fails semantically")
    first_violation: str | None = None


class SweepDetails(BaseModel):
    kind: Literal["sweep"] = "sweep"
    seed: int
    max_depth: int
    signature: str
    rules: list[RuleSweepOutcome] = Field(default_factory=list)


class ErrorDetails(BaseModel):
    kind: Literal["error"] = "error"
    error: str = Field(description="Error class name")
    message: str


Details = KindDetails | ProofDetails | ValidationDetails | ReplayDetails | SweepDetails | ErrorDetails


class Report(BaseModel):
    command: str = Field(description="CLI command that produced the report")
    status: Status
    details: Details = Field(discriminator="kind")
    elapsed_ms: float = Field(default=0.0, description="Wall-clock time spent in the command")

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]
