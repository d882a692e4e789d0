"""
Data models for proof scripts and sweep results.
"""

from dataclasses import dataclass, field
from pathlib import Path

from ..logic.kernel import Equation, Proof, RejectionReason
from ..logic.memory import MemorySignature


@dataclass(frozen=True)
class Expectation:
    """What replaying a script should observe; negative fixtures flip one or both."""

    kernel_accepts: bool = True
    semantics_holds: bool = True


@dataclass(frozen=True)
class Refusal:
    """Why a derived lemma could not be built; checking the script reports it at the lemma's node."""

    reason: RejectionReason
    detail: str


@dataclass(frozen=True)
class ProofScript:
    """A goal, the signature it lives over, and the proof that should establish it."""

    name: str
    signature: MemorySignature
    goal: Equation
    proof: Proof
    description: str = ""
    lemmas: dict[str, Proof] = field(default_factory=dict)
    step_labels: tuple[str, ...] = ()
    expect: Expectation = field(default_factory=Expectation)
    source: Path | None = None
    refusals: dict[Proof, Refusal] = field(default_factory=dict)


@dataclass(frozen=True)
class RuleSweepResult:
    rule: str
    samples: int
    accepted: int = 0
    exercised: int = 0
    violations: int = 0
    first_violation: str | None = None
