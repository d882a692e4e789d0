"""
Proof kernel for strong (==) and weak (~) equations.

A `Proof` is a tree of rule applications. `instantiate` holds the rule schemas: given the
conclusions of the premises and the explicit metavariable bindings it returns the one
equation the rule yields, or raises `KernelError`. `check_proof` replays a whole tree
through `instantiate` and compares every stated conclusion; nothing else is trusted.
"""

import logging
from collections.abc import Callable, Sequence
from dataclasses import dataclass, replace
from enum import Enum
from typing import TypeAlias

from .decorations import Kind, infer_kind
from .errors import InvalidProof, StateProofError, TypeMismatch, UnknownLocation
from .memory import Location, MemorySignature
from .terms import UNIT, Comp, Final, Id, Lookup, ObjTy, Pair, Pi1, Pi2, Prod, Term, Update, Val, check_term, check_type

logger = logging.getLogger(__name__)


class Mode(str, Enum):
    STRONG = "=="
    WEAK = "~"


@dataclass(frozen=True)
class Equation:
    lhs: Term
    rhs: Term
    mode: Mode

    def __post_init__(self) -> None:
        if (self.lhs.dom, self.lhs.cod) != (self.rhs.dom, self.rhs.cod):
            raise TypeMismatch(
                f"Equation sides are not parallel: {self.lhs.dom} -> {self.lhs.cod} "
                f"versus {self.rhs.dom} -> {self.rhs.cod}",
                expected=(self.lhs.dom, self.lhs.cod),
                actual=(self.rhs.dom, self.rhs.cod),
            )

    @property
    def dom(self) -> ObjTy:
        return self.lhs.dom

    @property
    def cod(self) -> ObjTy:
        return self.lhs.cod

    def flipped(self) -> "Equation":
        return Equation(self.rhs, self.lhs, self.mode)

    def __str__(self) -> str:
        return f"{self.lhs} {self.mode.value} {self.rhs}"


def strong(lhs: Term, rhs: Term) -> Equation:
    return Equation(lhs, rhs, Mode.STRONG)


def weak(lhs: Term, rhs: Term) -> Equation:
    return Equation(lhs, rhs, Mode.WEAK)


class RuleName(str, Enum):
    # monadic equational logic
    STRONG_REFL = "StrongRefl"
    STRONG_SYM = "StrongSym"
    STRONG_TRANS = "StrongTrans"
    ASSOC = "Assoc"
    ID_SRC = "IdSrc"
    ID_TGT = "IdTgt"
    STRONG_SUBS = "StrongSubs"
    STRONG_REPL = "StrongRepl"
    RO_WEAK_TO_STRONG = "RoWeakToStrong"
    STRONG_TO_WEAK = "StrongToWeak"
    WEAK_SYM = "WeakSym"
    WEAK_TRANS = "WeakTrans"
    WEAK_SUBS = "WeakSubs"
    PURE_WEAK_REPL = "PureWeakRepl"
    # empty product
    WEAK_FINAL_UNIQUE = "WeakFinalUnique"
    COMP_FINAL_UNIQUE = "CompFinalUnique"
    # pairs
    WEAK_PROJ_PI1 = "WeakProjPi1"
    STRONG_PROJ_PI2 = "StrongProjPi2"
    WEAK_PAIR_UNICITY = "WeakPairUnicity"
    # observational products
    AXIOM1 = "Axiom1"
    AXIOM2 = "Axiom2"
    LOCAL_TO_GLOBAL = "LocalToGlobal"

    @classmethod
    def resolve(cls, name: "str | RuleName") -> "RuleName | None":
        """Accept the canonical name or its snake_case spelling (`comp_final_unique`)."""
        if isinstance(name, RuleName):
            return name
        wanted = name.replace("_", "").lower()
        if wanted == "localglobal":
            return cls.LOCAL_TO_GLOBAL
        for rule in cls:
            if rule.value.lower() == wanted:
                return rule
        return None


class RejectionReason(str, Enum):
    UNKNOWN_RULE = "UnknownRule"
    SCHEMA_MISMATCH = "SchemaMismatch"
    SIDE_CONDITION_VIOLATED = "SideConditionViolated"
    TYPE_MISMATCH = "TypeMismatch"
    LOCATION_CLASH = "LocationClash"
    MISSING_LOCATION_PREMISE = "MissingLocationPremise"
    UNKNOWN_LOCATION = "UnknownLocation"


class KernelError(StateProofError):
    def __init__(self, reason: RejectionReason, detail: str):
        super().__init__(f"{reason.value}: {detail}")
        self.reason = reason
        self.detail = detail


Arg: TypeAlias = Term | ObjTy | Location


@dataclass(frozen=True)
class Proof:
    rule: "RuleName | str"
    premises: tuple["Proof", ...] = ()
    instantiation: tuple[Arg, ...] = ()
    conclusion: Equation | None = None
    label: str | None = None


@dataclass(frozen=True)
class Rejection:
    path: tuple[str, ...]
    reason: RejectionReason
    detail: str

    @property
    def path_text(self) -> str:
        return "/".join(self.path) if self.path else "<root>"

    def __str__(self) -> str:
        return f"{self.reason.value} at {self.path_text}: {self.detail}"


@dataclass(frozen=True)
class Verdict:
    rejection: Rejection | None = None

    @property
    def ok(self) -> bool:
        return self.rejection is None


# --------------------------------------------------------------------------- schema helpers


def _mode(eq: Equation, mode: Mode, rule: RuleName) -> Equation:
    if eq.mode is not mode:
        kind = "strong" if mode is Mode.STRONG else "weak"
        raise KernelError(RejectionReason.SCHEMA_MISMATCH, f"{rule.value} needs a {kind} premise, got {eq}")
    return eq


def _kind(term: Term, bound: Kind, rule: RuleName, role: str) -> Term:
    actual = infer_kind(term)
    if actual > bound:
        raise KernelError(
            RejectionReason.SIDE_CONDITION_VIOLATED,
            f"{rule.value} needs {role} to be at most {bound}, but {term} is {actual}",
        )
    return term


def _term(arg: Arg, rule: RuleName) -> Term:
    if not isinstance(arg, Term):
        raise KernelError(RejectionReason.SCHEMA_MISMATCH, f"{rule.value} expects a term argument, got {arg!r}")
    return arg


def _location(arg: Arg, rule: RuleName, sig: MemorySignature | None) -> Location:
    if isinstance(arg, (Term, ObjTy)):
        raise KernelError(RejectionReason.SCHEMA_MISMATCH, f"{rule.value} expects a location argument, got {arg}")
    if sig is not None and arg not in sig:
        raise KernelError(RejectionReason.UNKNOWN_LOCATION, f"Location '{arg}' is not declared")
    return arg


def _split(term: Term, projection: type[Pi1] | type[Pi2], rule: RuleName, role: str) -> Term:
    """Return `f` from `term = proj o f` with the projection matching `f`'s codomain."""
    if isinstance(term, Comp) and isinstance(term.g, projection) and isinstance(term.f.cod, Prod):
        if term.g == projection(term.f.cod.left, term.f.cod.right):
            return term.f
    name = "pi1" if projection is Pi1 else "pi2"
    raise KernelError(RejectionReason.SCHEMA_MISMATCH, f"{rule.value} needs {role} of the form {name} o f, got {term}")


# --------------------------------------------------------------------------- rule schemas


_Builder: TypeAlias = Callable[[Sequence[Equation], Sequence[Arg], MemorySignature | None], Equation]


@dataclass(frozen=True)
class _Schema:
    premises: int | None
    arity: int
    build: _Builder


def _strong_refl(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
    f = _term(args[0], RuleName.STRONG_REFL)
    return strong(f, f)


def _strong_sym(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
    return _mode(prem[0], Mode.STRONG, RuleName.STRONG_SYM).flipped()


def _trans(rule: RuleName, mode: Mode) -> _Builder:
    def build(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
        first, second = _mode(prem[0], mode, rule), _mode(prem[1], mode, rule)
        if first.rhs != second.lhs:
            raise KernelError(
                RejectionReason.SCHEMA_MISMATCH,
                f"{rule.value} premises do not chain: {first.rhs} is not {second.lhs}",
            )
        return Equation(first.lhs, second.rhs, mode)

    return build


def _assoc(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
    h, g, f = (_term(a, RuleName.ASSOC) for a in args)
    return strong(Comp(h, Comp(g, f)), Comp(Comp(h, g), f))


def _id_src(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
    f = _term(args[0], RuleName.ID_SRC)
    return strong(Comp(f, Id(f.dom)), f)


def _id_tgt(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
    f = _term(args[0], RuleName.ID_TGT)
    return strong(Comp(Id(f.cod), f), f)


def _subs(rule: RuleName, mode: Mode) -> _Builder:
    def build(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
        eq = _mode(prem[0], mode, rule)
        f = _term(args[0], rule)
        return Equation(Comp(eq.lhs, f), Comp(eq.rhs, f), mode)

    return build


def _strong_repl(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
    eq = _mode(prem[0], Mode.STRONG, RuleName.STRONG_REPL)
    g = _term(args[0], RuleName.STRONG_REPL)
    return strong(Comp(g, eq.lhs), Comp(g, eq.rhs))


def _pure_weak_repl(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
    eq = _mode(prem[0], Mode.WEAK, RuleName.PURE_WEAK_REPL)
    g = _kind(_term(args[0], RuleName.PURE_WEAK_REPL), Kind.PURE, RuleName.PURE_WEAK_REPL, "the outer term")
    return weak(Comp(g, eq.lhs), Comp(g, eq.rhs))


def _ro_weak_to_strong(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
    eq = _mode(prem[0], Mode.WEAK, RuleName.RO_WEAK_TO_STRONG)
    _kind(eq.lhs, Kind.RO, RuleName.RO_WEAK_TO_STRONG, "the left-hand side")
    _kind(eq.rhs, Kind.RO, RuleName.RO_WEAK_TO_STRONG, "the right-hand side")
    return strong(eq.lhs, eq.rhs)


def _strong_to_weak(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
    eq = _mode(prem[0], Mode.STRONG, RuleName.STRONG_TO_WEAK)
    return weak(eq.lhs, eq.rhs)


def _weak_sym(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
    return _mode(prem[0], Mode.WEAK, RuleName.WEAK_SYM).flipped()


def _weak_final_unique(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
    f, g = (_term(a, RuleName.WEAK_FINAL_UNIQUE) for a in args)
    for term in (f, g):
        if term.cod != UNIT:
            raise KernelError(
                RejectionReason.TYPE_MISMATCH, f"WeakFinalUnique needs maps into unit, {term} ends in {term.cod}"
            )
    return weak(f, g)


def _comp_final_unique(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
    effect = _mode(prem[0], Mode.STRONG, RuleName.COMP_FINAL_UNIQUE)
    result = _mode(prem[1], Mode.WEAK, RuleName.COMP_FINAL_UNIQUE)
    final = Final(result.cod)
    expected = strong(Comp(final, result.lhs), Comp(final, result.rhs))
    if effect != expected:
        raise KernelError(
            RejectionReason.SCHEMA_MISMATCH,
            f"CompFinalUnique needs the effect premise {expected}, got {effect}",
        )
    return strong(result.lhs, result.rhs)


def _pair_projection(rule: RuleName) -> _Builder:
    def build(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
        f1, f2 = (_term(a, rule) for a in args)
        _kind(f1, Kind.RO, rule, "the first component")
        pair = Pair(f1, f2)
        if rule is RuleName.WEAK_PROJ_PI1:
            return weak(Comp(Pi1(f1.cod, f2.cod), pair), f1)
        return strong(Comp(Pi2(f1.cod, f2.cod), pair), f2)

    return build


def _weak_pair_unicity(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
    rule = RuleName.WEAK_PAIR_UNICITY
    first, second = _mode(prem[0], Mode.WEAK, rule), _mode(prem[1], Mode.WEAK, rule)
    f = _split(first.lhs, Pi1, rule, "the first premise's left side")
    g = _split(first.rhs, Pi1, rule, "the first premise's right side")
    f2 = _split(second.lhs, Pi2, rule, "the second premise's left side")
    g2 = _split(second.rhs, Pi2, rule, "the second premise's right side")
    if (f, g) != (f2, g2):
        raise KernelError(RejectionReason.SCHEMA_MISMATCH, "WeakPairUnicity premises project different terms")
    return weak(f, g)


def _axiom1(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
    i = _location(args[0], RuleName.AXIOM1, sig)
    return weak(Comp(Lookup(i), Update(i)), Id(Val(i)))


def _axiom2(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
    i, k = _location(args[0], RuleName.AXIOM2, sig), _location(args[1], RuleName.AXIOM2, sig)
    if i == k:
        raise KernelError(RejectionReason.LOCATION_CLASH, f"Axiom2 needs distinct locations, got '{i}' twice")
    return weak(Comp(Lookup(i), Update(k)), Comp(Lookup(i), Final(Val(k))))


def _local_to_global(prem: Sequence[Equation], args: Sequence[Arg], sig: MemorySignature | None) -> Equation:
    rule = RuleName.LOCAL_TO_GLOBAL
    if sig is None:
        raise KernelError(RejectionReason.SCHEMA_MISMATCH, "LocalToGlobal can only be checked against a signature")
    if not sig.locations:
        raise KernelError(RejectionReason.SCHEMA_MISMATCH, "LocalToGlobal needs at least one declared location")
    if len(prem) != len(sig.locations):
        raise KernelError(
            RejectionReason.MISSING_LOCATION_PREMISE,
            f"LocalToGlobal needs one premise per location ({len(sig.locations)}), got {len(prem)}",
        )
    f: Term | None = None
    g: Term | None = None
    for location, eq in zip(sig.locations, prem):
        _mode(eq, Mode.WEAK, rule)
        lhs, rhs = eq.lhs, eq.rhs
        observed = (
            isinstance(lhs, Comp) and lhs.g == Lookup(location) and isinstance(rhs, Comp) and rhs.g == Lookup(location)
        )
        if not observed:
            raise KernelError(
                RejectionReason.MISSING_LOCATION_PREMISE,
                f"LocalToGlobal premise for '{location}' must observe lookup {location} on both sides, got {eq}",
            )
        assert isinstance(lhs, Comp) and isinstance(rhs, Comp)
        if f is None:
            f, g = lhs.f, rhs.f
        elif (lhs.f, rhs.f) != (f, g):
            raise KernelError(RejectionReason.SCHEMA_MISMATCH, "LocalToGlobal premises observe different terms")
    assert f is not None and g is not None
    if f.cod != UNIT:
        raise KernelError(RejectionReason.TYPE_MISMATCH, f"LocalToGlobal needs maps into unit, {f} ends in {f.cod}")
    return strong(f, g)


_SCHEMAS: dict[RuleName, _Schema] = {
    RuleName.STRONG_REFL: _Schema(0, 1, _strong_refl),
    RuleName.STRONG_SYM: _Schema(1, 0, _strong_sym),
    RuleName.STRONG_TRANS: _Schema(2, 0, _trans(RuleName.STRONG_TRANS, Mode.STRONG)),
    RuleName.ASSOC: _Schema(0, 3, _assoc),
    RuleName.ID_SRC: _Schema(0, 1, _id_src),
    RuleName.ID_TGT: _Schema(0, 1, _id_tgt),
    RuleName.STRONG_SUBS: _Schema(1, 1, _subs(RuleName.STRONG_SUBS, Mode.STRONG)),
    RuleName.STRONG_REPL: _Schema(1, 1, _strong_repl),
    RuleName.RO_WEAK_TO_STRONG: _Schema(1, 0, _ro_weak_to_strong),
    RuleName.STRONG_TO_WEAK: _Schema(1, 0, _strong_to_weak),
    RuleName.WEAK_SYM: _Schema(1, 0, _weak_sym),
    RuleName.WEAK_TRANS: _Schema(2, 0, _trans(RuleName.WEAK_TRANS, Mode.WEAK)),
    RuleName.WEAK_SUBS: _Schema(1, 1, _subs(RuleName.WEAK_SUBS, Mode.WEAK)),
    RuleName.PURE_WEAK_REPL: _Schema(1, 1, _pure_weak_repl),
    RuleName.WEAK_FINAL_UNIQUE: _Schema(0, 2, _weak_final_unique),
    RuleName.COMP_FINAL_UNIQUE: _Schema(2, 0, _comp_final_unique),
    RuleName.WEAK_PROJ_PI1: _Schema(0, 2, _pair_projection(RuleName.WEAK_PROJ_PI1)),
    RuleName.STRONG_PROJ_PI2: _Schema(0, 2, _pair_projection(RuleName.STRONG_PROJ_PI2)),
    RuleName.WEAK_PAIR_UNICITY: _Schema(2, 0, _weak_pair_unicity),
    RuleName.AXIOM1: _Schema(0, 1, _axiom1),
    RuleName.AXIOM2: _Schema(0, 2, _axiom2),
    RuleName.LOCAL_TO_GLOBAL: _Schema(None, 0, _local_to_global),
}


def rule_arity(rule: RuleName) -> tuple[int | None, int]:
    """(number of premises or None when it depends on the signature, number of arguments)."""
    schema = _SCHEMAS[rule]
    return schema.premises, schema.arity


def instantiate(
    rule: "RuleName | str",
    premises: Sequence[Equation],
    args: Sequence[Arg] = (),
    sig: MemorySignature | None = None,
) -> Equation:
    """
    Return the equation `rule` concludes from `premises` under the bindings `args`.

    Raises:
        KernelError: If the rule is unknown or any schema condition fails
    """
    resolved = RuleName.resolve(rule)
    if resolved is None:
        raise KernelError(RejectionReason.UNKNOWN_RULE, f"No rule named '{rule}'")
    schema = _SCHEMAS[resolved]
    if schema.premises is not None and len(premises) != schema.premises:
        raise KernelError(
            RejectionReason.SCHEMA_MISMATCH,
            f"{resolved.value} takes {schema.premises} premise(s), got {len(premises)}",
        )
    if len(args) != schema.arity:
        raise KernelError(
            RejectionReason.SCHEMA_MISMATCH, f"{resolved.value} takes {schema.arity} argument(s), got {len(args)}"
        )
    try:
        return schema.build(premises, args, sig)
    except TypeMismatch as e:
        raise KernelError(RejectionReason.TYPE_MISMATCH, str(e)) from e


def infer(
    rule: "RuleName | str",
    *premises: Proof,
    args: Sequence[Arg] = (),
    sig: MemorySignature | None = None,
    label: str | None = None,
) -> Proof:
    """Build a proof node whose conclusion is the schema instance of `rule`."""
    conclusions = [_conclusion(p) for p in premises]
    conclusion = instantiate(rule, conclusions, args, sig)
    return Proof(RuleName.resolve(rule) or rule, tuple(premises), tuple(args), conclusion, label)


def labelled(proof: Proof, label: str) -> Proof:
    return replace(proof, label=label)


def _conclusion(proof: Proof) -> Equation:
    if proof.conclusion is None:
        raise KernelError(RejectionReason.SCHEMA_MISMATCH, f"Premise {proof.rule} has no conclusion")
    return proof.conclusion


def _check_locations(proof: Proof, sig: MemorySignature) -> None:
    terms: list[Term] = [a for a in proof.instantiation if isinstance(a, Term)]
    if proof.conclusion is not None:
        terms += [proof.conclusion.lhs, proof.conclusion.rhs]
    for term in terms:
        check_term(term, sig)
    for arg in proof.instantiation:
        if isinstance(arg, ObjTy):
            check_type(arg, sig)


def _check(proof: Proof, path: tuple[str, ...], sig: MemorySignature) -> Rejection | None:
    for index, premise in enumerate(proof.premises):
        segment = premise.label or str(index)
        rejection = _check(premise, path + (segment,), sig)
        if rejection is not None:
            return rejection

    try:
        _check_locations(proof, sig)
        conclusions = [_conclusion(p) for p in proof.premises]
        expected = instantiate(proof.rule, conclusions, proof.instantiation, sig)
    except UnknownLocation as e:
        return Rejection(path, RejectionReason.UNKNOWN_LOCATION, str(e))
    except KernelError as e:
        return Rejection(path, e.reason, e.detail)

    if proof.conclusion != expected:
        rule = RuleName.resolve(proof.rule)
        name = rule.value if rule is not None else proof.rule
        return Rejection(
            path,
            RejectionReason.SCHEMA_MISMATCH,
            f"{expected} is what {name} yields here, "
            f"but the proof claims {proof.conclusion}",
        )
    return None


def check_proof(proof: Proof, sig: MemorySignature) -> Verdict:
    """Check every node of `proof` against its rule schema over `sig`."""
    root = (proof.label,) if proof.label else ()
    rejection = _check(proof, root, sig)
    if rejection is not None:
        logger.debug(f"Proof rejected: {rejection}")
    return Verdict(rejection)


def conclude(proof: Proof, sig: MemorySignature) -> Equation:
    """Return the conclusion of a proof the kernel accepts."""
    verdict = check_proof(proof, sig)
    if verdict.rejection is not None:
        raise InvalidProof(str(verdict.rejection))
    assert proof.conclusion is not None
    return proof.conclusion
