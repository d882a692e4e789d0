"""
Loader for proof scripts.

A script is a YAML document: a goal, optional definitions, and an ordered list of lemmas
that each apply one kernel rule or one derived rule to earlier lemmas. The loader only
assembles the proof tree; checking it is the kernel's job.
"""

import logging
import re
from dataclasses import replace
from pathlib import Path
from typing import Any

import yaml
from jsonschema import Draft202012Validator

from ..config import settings
from ..logic import derived
from ..logic.errors import ParseError, ScriptError, SideConditionViolated, StateProofError, TypeMismatch
from ..logic.kernel import Arg, Equation, KernelError, Proof, RejectionReason, RuleName, instantiate
from ..logic.memory import Location, MemorySignature
from ..logic.terms import check_type
from ..proofs.models import Expectation, ProofScript, Refusal
from .syntax import parse_equation, parse_signature, parse_term, parse_type

logger = logging.getLogger(__name__)

SCRIPT_SUFFIX = ".proof"

_TEXT = {"type": ["string", "integer"]}

SCRIPT_SCHEMA: dict[str, Any] = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["name", "goal", "lemmas"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string", "minLength": 1},
        "description": {"type": "string"},
        "signature": {"type": "string"},
        "goal": {"type": "string"},
        "definitions": {"type": "object", "additionalProperties": {"type": "string"}},
        "proof": {"type": "string"},
        "expect": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "kernel": {"enum": ["accept", "reject"]},
                "semantics": {"enum": ["holds", "refuted"]},
            },
        },
        "lemmas": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["name"],
                "additionalProperties": False,
                "oneOf": [{"required": ["rule"]}, {"required": ["derive"]}],
                "properties": {
                    "name": {"type": "string", "minLength": 1},
                    "label": _TEXT,
                    "rule": {"type": "string"},
                    "derive": {"type": "string"},
                    "premises": {"type": "array", "items": {"type": "string"}},
                    "args": {"type": "array", "items": _TEXT},
                    "select": {"enum": ["pi1", "pi2", "left", "right", "first", "second"]},
                    "claim": {"type": "string"},
                },
            },
        },
    },
}

_VALIDATOR = Draft202012Validator(SCRIPT_SCHEMA)

_REFERENCE = re.compile(r"\{([A-Za-z_][A-Za-z0-9_]*)\}")

# derived rule name -> (builder, argument sorts)
_DERIVATIONS: dict[str, tuple[Any, tuple[str, ...]]] = {
    "weak_refl": (derived.derive_weak_refl, ("term",)),
    "E_0_3": (derived.derive_E_0_3, ("term", "term", "term")),
    "E_1_4": (derived.derive_E_1_4, ("term",)),
    "pair_projections": (derived.derive_pair_projections, ("term", "term", "variant")),
    "prod_projections": (derived.derive_prod_projections, ("term", "term", "variant")),
    "perm_prod_projections": (derived.derive_perm_prod_projections, ("term", "term", "variant")),
    "inv_pi1_iso": (derived.derive_inv_pi1_iso, ("type",)),
}


def derivation_names() -> list[str]:
    return sorted(_DERIVATIONS)


def _expand(text: str, definitions: dict[str, str]) -> str:
    def substitute(match: re.Match) -> str:
        name = match.group(1)
        if name not in definitions:
            raise ScriptError(f"Undefined reference '{{{name}}}' in '{text}'")
        return f"({definitions[name]})"

    return _REFERENCE.sub(substitute, text)


def _resolve_definitions(raw: dict[str, str]) -> dict[str, str]:
    """Expand definitions in order; each may refer to the ones before it."""
    resolved: dict[str, str] = {}
    for name, text in raw.items():
        resolved[name] = _expand(text, resolved)
    return resolved


def _location(text: str) -> Location:
    text = text.strip()
    return int(text) if text.isdigit() else text


def _argument(sort: str, raw: str | int, sig: MemorySignature, definitions: dict[str, str]) -> Any:
    text = _expand(str(raw), definitions)
    if sort == "location":
        return sig.require(_location(text))
    if sort == "type":
        return check_type(parse_type(text), sig)
    if sort == "variant":
        return derived.Variant(text.strip())
    return parse_term(text, sig)


def _rule_argument(rule: RuleName | None, raw: str | int, sig: MemorySignature, definitions: dict[str, str]) -> Arg:
    if rule in (RuleName.AXIOM1, RuleName.AXIOM2):
        return _location(_expand(str(raw), definitions))
    if rule is None:
        try:
            return _argument("term", raw, sig, definitions)
        except ParseError:
            return _location(str(raw))
    return _argument("term", raw, sig, definitions)


class _ScriptBuilder:
    def __init__(self, sig: MemorySignature, definitions: dict[str, str]):
        self.sig = sig
        self.definitions = definitions
        self.lemmas: dict[str, Proof] = {}
        self.labels: dict[str, str] = {}
        self.refusals: dict[Proof, Refusal] = {}

    def premise(self, lemma: str, name: str) -> Proof:
        if name not in self.lemmas:
            raise ScriptError(f"Lemma '{lemma}' refers to '{name}', which is not an earlier lemma")
        return self.lemmas[name]

    def equation(self, text: str) -> Equation:
        return parse_equation(_expand(text, self.definitions), self.sig)

    def add(self, entry: dict[str, Any]) -> None:
        name = entry["name"]
        if name in self.lemmas:
            raise ScriptError(f"Lemma '{name}' is defined twice")
        label = str(entry["label"]) if "label" in entry else None
        refusal: Refusal | None = None
        try:
            if "rule" in entry:
                proof = self._rule(entry)
            else:
                proof, refusal = self._derive(entry)
        except ScriptError:
            raise
        except StateProofError as e:
            raise ScriptError(f"Lemma '{name}': {e}") from e
        proof = replace(proof, label=label or name)
        self.lemmas[name] = proof
        if refusal is not None:
            self.refusals[proof] = refusal
        if label is not None:
            self.labels[name] = label

    def _rule(self, entry: dict[str, Any]) -> Proof:
        name = entry["name"]
        rule = RuleName.resolve(entry["rule"])
        premises = tuple(self.premise(name, p) for p in entry.get("premises", []))
        args = tuple(_rule_argument(rule, a, self.sig, self.definitions) for a in entry.get("args", []))

        if "claim" in entry:
            conclusion: Equation | None = self.equation(entry["claim"])
        elif any(p.conclusion is None for p in premises):
            conclusion = None
        else:
            known = [p.conclusion for p in premises if p.conclusion is not None]
            try:
                conclusion = instantiate(entry["rule"], known, args, self.sig)
            except KernelError as e:
                # left unset so the kernel reports the rejection at this lemma's path
                logger.debug(f"Lemma '{name}' has no schema instance: {e}")
                conclusion = None
        return Proof(rule or entry["rule"], premises, args, conclusion)

    def _derive(self, entry: dict[str, Any]) -> tuple[Proof, Refusal | None]:
        name, which = entry["name"], entry["derive"]
        key = which.removeprefix("derive_")
        if key not in _DERIVATIONS:
            raise ScriptError(f"Lemma '{name}': unknown derived rule '{which}'. Known: {', '.join(derivation_names())}")
        if entry.get("premises"):
            raise ScriptError(f"Lemma '{name}': derived rules take no premises")
        builder, sorts = _DERIVATIONS[key]
        raw_args = entry.get("args", [])
        if len(raw_args) != len(sorts):
            raise ScriptError(f"Lemma '{name}': {key} takes {len(sorts)} argument(s), got {len(raw_args)}")
        args = [_argument(sort, raw, self.sig, self.definitions) for sort, raw in zip(sorts, raw_args)]

        try:
            result = builder(*args)
        except (SideConditionViolated, TypeMismatch) as e:
            # an unchecked node in the lemma's place; the refusal explains the rejection
            logger.debug(f"Lemma '{name}': {key} refused its arguments: {e}")
            reason = (
                RejectionReason.SIDE_CONDITION_VIOLATED
                if isinstance(e, SideConditionViolated)
                else RejectionReason.TYPE_MISMATCH
            )
            claim = self.equation(entry["claim"]) if "claim" in entry else None
            return Proof(f"derive_{key}", conclusion=claim), Refusal(reason, str(e))
        if isinstance(result, tuple):
            if "select" not in entry:
                raise ScriptError(f"Lemma '{name}': {key} proves two facts; choose one with 'select'")
            result = derived.select(result, entry["select"])
        if "claim" in entry and self.equation(entry["claim"]) != result.conclusion:
            raise ScriptError(f"Lemma '{name}': {key} proves {result.conclusion}, not the claimed {entry['claim']}")
        return result, None


def load_script_text(text: str, sig: MemorySignature | None = None, source: Path | None = None) -> ProofScript:
    """
    Build a `ProofScript` from YAML text.

    Args:
        text: The YAML document
        sig: Signature overriding the one the script declares
        source: File the text came from, kept for reporting

    Raises:
        ScriptError: If the document is malformed or a lemma cannot be assembled
        ParseError: If the goal or a definition does not parse
    """
    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ScriptError(f"Invalid YAML: {e}") from e

    errors = sorted(_VALIDATOR.iter_errors(document), key=lambda e: list(e.absolute_path))
    if errors:
        first = errors[0]
        where = "/".join(str(p) for p in first.absolute_path) or "<document>"
        raise ScriptError(f"Invalid proof script at {where}: {first.message}")

    if sig is None:
        sig = parse_signature(document.get("signature") or settings.DEFAULT_SIGNATURE)
    builder = _ScriptBuilder(sig, _resolve_definitions(document.get("definitions", {})))
    goal = builder.equation(document["goal"])
    for entry in document["lemmas"]:
        builder.add(entry)

    proof_name = document.get("proof", document["lemmas"][-1]["name"])
    proof = builder.premise("proof", proof_name)
    expect = document.get("expect", {})
    return ProofScript(
        name=document["name"],
        signature=sig,
        goal=goal,
        proof=proof,
        description=document.get("description", ""),
        lemmas=dict(builder.lemmas),
        step_labels=tuple(builder.labels.values()),
        expect=Expectation(
            kernel_accepts=expect.get("kernel", "accept") == "accept",
            semantics_holds=expect.get("semantics", "holds") == "holds",
        ),
        source=source,
        refusals=dict(builder.refusals),
    )


def load_script(path: Path, sig: MemorySignature | None = None) -> ProofScript:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ScriptError(f"Cannot read {path}: {e}") from e
    return load_script_text(text, sig, source=path)


def script_paths(target: Path) -> list[Path]:
    """`target` itself, or every `*.proof` file below it in sorted order."""
    if target.is_dir():
        return sorted(target.rglob(f"*{SCRIPT_SUFFIX}"))
    if not target.exists():
        raise ScriptError(f"No such file or directory: {target}")
    return [target]
