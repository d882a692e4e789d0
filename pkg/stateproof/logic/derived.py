"""
Derived terms and derived rules.

The derived terms are plain abbreviations that expand into core `Term`s. The derived rules
are functions that build kernel proofs through `infer`, so every fact they return is checked
by the same schemas as a hand-written proof.
"""

from collections.abc import Sequence
from enum import Enum

from .decorations import Kind, infer_kind
from .errors import SideConditionViolated, TypeMismatch
from .kernel import Mode, Proof, RuleName, infer
from .terms import UNIT, Comp, Final, Id, ObjTy, Pair, Pi1, Pi2, Term

# --------------------------------------------------------------------------- derived terms


def inv_pi1(obj: ObjTy) -> Term:
    """`pair(id, final) : X -> X*unit`, the inverse of `pi1[X,unit]`."""
    return Pair(Id(obj), Final(obj))


def permut(left: ObjTy, right: ObjTy) -> Term:
    """`pair(pi2, pi1) : X*Y -> Y*X`."""
    return Pair(Pi2(left, right), Pi1(left, right))


def perm_pair(f: Term, g: Term) -> Term:
    """Right pair: `permut o pair(g, f)`, so `g` is the component read on the initial state."""
    return Comp(permut(g.cod, f.cod), Pair(g, f))


def prod(f: Term, g: Term) -> Term:
    return Pair(Comp(f, Pi1(f.dom, g.dom)), Comp(g, Pi2(f.dom, g.dom)))


def perm_prod(f: Term, g: Term) -> Term:
    return perm_pair(Comp(f, Pi1(f.dom, g.dom)), Comp(g, Pi2(f.dom, g.dom)))


def left_seq(f1: Term, f2: Term) -> Term:
    """`f1` then `f2`: `prod(id, f2) o perm_prod(f1, id)`."""
    return Comp(prod(Id(f1.cod), f2), perm_prod(f1, Id(f2.dom)))


def right_seq(f1: Term, f2: Term) -> Term:
    """`f2` then `f1`: `perm_prod(f1, id) o prod(id, f2)`."""
    return Comp(perm_prod(f1, Id(f2.cod)), prod(Id(f1.dom), f2))


# --------------------------------------------------------------------------- proof plumbing


def _conclusion_mode(proof: Proof) -> Mode:
    assert proof.conclusion is not None
    return proof.conclusion.mode


def to_weak(proof: Proof) -> Proof:
    if _conclusion_mode(proof) is Mode.WEAK:
        return proof
    return infer(RuleName.STRONG_TO_WEAK, proof)


def symmetric(proof: Proof) -> Proof:
    rule = RuleName.STRONG_SYM if _conclusion_mode(proof) is Mode.STRONG else RuleName.WEAK_SYM
    return infer(rule, proof)


def strong_chain(*proofs: Proof) -> Proof:
    """Fold `StrongTrans` over `a == b`, `b == c`, ... from the left."""
    if not proofs:
        raise ValueError("strong_chain needs at least one proof")
    result = proofs[0]
    for proof in proofs[1:]:
        result = infer(RuleName.STRONG_TRANS, result, proof)
    return result


def weak_chain(*proofs: Proof) -> Proof:
    """Like `strong_chain`, weakening strong links first."""
    if not proofs:
        raise ValueError("weak_chain needs at least one proof")
    result = to_weak(proofs[0])
    for proof in proofs[1:]:
        result = infer(RuleName.WEAK_TRANS, result, to_weak(proof))
    return result


def _require(term: Term, bound: Kind, role: str) -> Term:
    actual = infer_kind(term)
    if actual > bound:
        raise SideConditionViolated(
            f"{role} must be at most {bound}, but {term} is {actual}", required=bound, actual=actual
        )
    return term


# --------------------------------------------------------------------------- derived rules


def derive_weak_refl(f: Term) -> Proof:
    """`f ~ f`."""
    return infer(RuleName.STRONG_TO_WEAK, infer(RuleName.STRONG_REFL, args=(f,)))


def derive_E_0_3(f: Term, g: Term, h: Term) -> Proof:
    """
    `f o g == h` for pure `f`, `g`, `h` where `f` and `h` end in unit.

    Raises:
        SideConditionViolated: If any of the three terms is not pure
        TypeMismatch: If `f o g` and `h` are not parallel maps into unit
    """
    for role, term in (("f", f), ("g", g), ("h", h)):
        _require(term, Kind.PURE, role)
    for term in (f, h):
        if term.cod != UNIT:
            raise TypeMismatch(f"{term} must end in unit", expected=UNIT, actual=term.cod)
    if g.dom != h.dom:
        raise TypeMismatch(f"{g} and {h} start from different types", expected=h.dom, actual=g.dom)
    return infer(RuleName.RO_WEAK_TO_STRONG, infer(RuleName.WEAK_FINAL_UNIQUE, args=(Comp(f, g), h)))


def derive_E_1_4(h: Term) -> Proof:
    """`final o h == id[unit]` for an accessor `h` out of unit."""
    if h.dom != UNIT:
        raise TypeMismatch(f"{h} must start from unit", expected=UNIT, actual=h.dom)
    _require(h, Kind.RO, "h")
    weak_eq = infer(RuleName.WEAK_FINAL_UNIQUE, args=(Comp(Final(h.cod), h), Id(UNIT)))
    return infer(RuleName.RO_WEAK_TO_STRONG, weak_eq)


class Variant(str, Enum):
    """Kinds of the two coefficients of a pair: `<first><second>`."""

    PUREPURE = "purepure"
    PURERO = "purero"
    PURERW = "purerw"
    ROPURE = "ropure"
    RWPURE = "rwpure"

    @property
    def bounds(self) -> tuple[Kind, Kind]:
        first, second = {
            Variant.PUREPURE: ("pure", "pure"),
            Variant.PURERO: ("pure", "ro"),
            Variant.PURERW: ("pure", "rw"),
            Variant.ROPURE: ("ro", "pure"),
            Variant.RWPURE: ("rw", "pure"),
        }[self]
        return Kind.parse(first), Kind.parse(second)

    @property
    def permuted(self) -> bool:
        """True for the variants whose effect sits in the first coefficient (right pairs)."""
        return self in (Variant.ROPURE, Variant.RWPURE)


def _check_variant(f1: Term, f2: Term, variant: Variant | str) -> Variant:
    variant = Variant(variant)
    first, second = variant.bounds
    _require(f1, first, f"First coefficient of a {variant.value} pair")
    _require(f2, second, f"Second coefficient of a {variant.value} pair")
    return variant


def _left_pair_projections(f1: Term, f2: Term) -> tuple[Proof, Proof]:
    _require(f1, Kind.RO, "First coefficient of a left pair")
    first = infer(RuleName.WEAK_PROJ_PI1, args=(f1, f2))
    if infer_kind(f2) <= Kind.RO:
        first = infer(RuleName.RO_WEAK_TO_STRONG, first)
    second = infer(RuleName.STRONG_PROJ_PI2, args=(f1, f2))
    return first, second


def _right_pair_projections(f1: Term, f2: Term) -> tuple[Proof, Proof]:
    """Projections of `perm_pair(f1, f2) = permut o pair(f2, f1)`."""
    _require(f2, Kind.RO, "Second coefficient of a right pair")
    swap = permut(f2.cod, f1.cod)
    inner = Pair(f2, f1)
    swap_args = (Pi2(f2.cod, f1.cod), Pi1(f2.cod, f1.cod))
    pi1_swap = infer(RuleName.RO_WEAK_TO_STRONG, infer(RuleName.WEAK_PROJ_PI1, args=swap_args))
    pi2_swap = infer(RuleName.STRONG_PROJ_PI2, args=swap_args)

    first = strong_chain(
        infer(RuleName.ASSOC, args=(Pi1(f1.cod, f2.cod), swap, inner)),
        infer(RuleName.STRONG_SUBS, pi1_swap, args=(inner,)),
        infer(RuleName.STRONG_PROJ_PI2, args=(f2, f1)),
    )
    second = weak_chain(
        infer(RuleName.ASSOC, args=(Pi2(f1.cod, f2.cod), swap, inner)),
        infer(RuleName.STRONG_SUBS, pi2_swap, args=(inner,)),
        infer(RuleName.WEAK_PROJ_PI1, args=(f2, f1)),
    )
    if infer_kind(f1) <= Kind.RO:
        second = infer(RuleName.RO_WEAK_TO_STRONG, second)
    return first, second


def derive_pair_projections(f1: Term, f2: Term, variant: Variant | str) -> tuple[Proof, Proof]:
    """
    Projection laws of the semi-pure pair of `f1` and `f2`.

    Variants with a pure first coefficient use the left pair `pair(f1, f2)`; `ropure` and
    `rwpure` use the right pair `perm_pair(f1, f2)`. The first projection is weak when the
    other coefficient modifies the state and strong otherwise; the second projection is strong
    unless the first coefficient modifies the state.

    Returns:
        (proof about `pi1 o <pair>`, proof about `pi2 o <pair>`)

    Raises:
        SideConditionViolated: If a coefficient's kind exceeds the variant's bound
    """
    variant = _check_variant(f1, f2, variant)
    if variant.permuted:
        return _right_pair_projections(f1, f2)
    return _left_pair_projections(f1, f2)


def derive_prod_projections(f: Term, g: Term, variant: Variant | str) -> tuple[Proof, Proof]:
    """
    `pi1 o prod(f, g)` against `f o pi1` and `pi2 o prod(f, g)` against `g o pi2`.

    `ropure` and `rwpure` name right pairs, so for them the laws are stated for `perm_prod(f, g)`.
    """
    variant = _check_variant(f, g, variant)
    left, right = Comp(f, Pi1(f.dom, g.dom)), Comp(g, Pi2(f.dom, g.dom))
    if variant.permuted:
        return _right_pair_projections(left, right)
    return _left_pair_projections(left, right)


def derive_perm_prod_projections(f: Term, g: Term, variant: Variant | str) -> tuple[Proof, Proof]:
    """`pi1 o perm_prod(f, g) == f o pi1` and `pi2 o perm_prod(f, g)` against `g o pi2`."""
    _check_variant(f, g, variant)
    return _right_pair_projections(Comp(f, Pi1(f.dom, g.dom)), Comp(g, Pi2(f.dom, g.dom)))


def derive_inv_pi1_iso(obj: ObjTy) -> tuple[Proof, Proof]:
    """
    `pi1[X,unit]` and `inv_pi1[X]` are mutually inverse.

    Returns:
        (proof of `pi1 o inv_pi1 == id[X]`, proof of `inv_pi1 o pi1 == id[X*unit]`)
    """
    p, q = Pi1(obj, UNIT), Pi2(obj, UNIT)
    h = inv_pi1(obj)
    retraction = infer(RuleName.RO_WEAK_TO_STRONG, infer(RuleName.WEAK_PROJ_PI1, args=(Id(obj), Final(obj))))

    on_first = strong_chain(
        infer(RuleName.ASSOC, args=(p, h, p)),
        infer(RuleName.STRONG_SUBS, retraction, args=(p,)),
        infer(RuleName.ID_TGT, args=(p,)),
        symmetric(infer(RuleName.ID_SRC, args=(p,))),
    )
    on_second = strong_chain(
        infer(RuleName.ASSOC, args=(q, h, p)),
        infer(RuleName.STRONG_SUBS, infer(RuleName.STRONG_PROJ_PI2, args=(Id(obj), Final(obj))), args=(p,)),
        derive_E_0_3(Final(obj), p, q),
        symmetric(infer(RuleName.ID_SRC, args=(q,))),
    )
    section = infer(
        RuleName.RO_WEAK_TO_STRONG, infer(RuleName.WEAK_PAIR_UNICITY, to_weak(on_first), to_weak(on_second))
    )
    return retraction, section


def select(proofs: Sequence[Proof], which: str) -> Proof:
    """Pick one proof from a combinator that returns two (`pi1`/`left` or `pi2`/`right`)."""
    index = {"pi1": 0, "left": 0, "first": 0, "pi2": 1, "right": 1, "second": 1}.get(which)
    if index is None or index >= len(proofs):
        raise ValueError(f"Cannot select '{which}' from {len(proofs)} proof(s)")
    return proofs[index]
