"""
Core logic: memory signatures, typed terms, decorations, the proof kernel, derived rules
and the state-passing semantics.
"""

from .decorations import Kind, infer_kind
from .kernel import Equation, Mode, Proof, RuleName, Verdict, check_proof, infer, instantiate
from .memory import MemorySignature, declare_signature
from .semantics import check_semantic, eval_term

__all__ = [
    "Equation",
    "Kind",
    "MemorySignature",
    "Mode",
    "Proof",
    "RuleName",
    "Verdict",
    "check_proof",
    "check_semantic",
    "declare_signature",
    "eval_term",
    "infer",
    "infer_kind",
    "instantiate",
]
