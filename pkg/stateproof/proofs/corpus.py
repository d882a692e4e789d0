"""
Built-in proof scripts: the update/lookup commutation theorem and the axiom instances.

The commutation proof proceeds in two branches joined by `CompFinalUnique`:
the effects of both sides agree (steps 1.1 to 1.5) and their results agree (2.1 to 2.4).
Each step is labelled so replays and reports can be compared with the narrated proof.
"""

import logging
from dataclasses import replace

from ..logic.derived import (
    derive_E_0_3,
    derive_E_1_4,
    derive_pair_projections,
    derive_perm_prod_projections,
    derive_prod_projections,
    inv_pi1,
    perm_prod,
    prod,
    strong_chain,
    symmetric,
    to_weak,
    weak_chain,
)
from ..logic.errors import LocationClash
from ..logic.kernel import (
    Equation,
    Mode,
    Proof,
    Rejection,
    RejectionReason,
    RuleName,
    Verdict,
    check_proof,
    infer,
    labelled,
    strong,
)
from ..logic.memory import Location, MemorySignature
from ..logic.terms import UNIT, Comp, Final, Id, Lookup, Pi1, Pi2, Update, Val, compose
from .models import Expectation, ProofScript

logger = logging.getLogger(__name__)

COMMUTATION_STEPS = ("1.1", "1.2", "1.3", "1.4", "1.5", "2.1", "2.2", "2.3", "2.4")


def commutation_goal(i: Location, j: Location) -> Equation:
    """`lookup j o update i == pi2 o perm_prod(update i, id) o prod(id, lookup j) o inv_pi1`."""
    u, l = Update(i), Lookup(j)
    rhs = compose(
        Pi2(UNIT, Val(j)),
        perm_prod(u, Id(Val(j))),
        prod(Id(Val(i)), l),
        inv_pi1(Val(i)),
    )
    return strong(Comp(l, u), rhs)


def _assoc(h, g, f) -> Proof:
    return infer(RuleName.ASSOC, args=(h, g, f))


def _subs(proof: Proof, f) -> Proof:
    assert proof.conclusion is not None
    rule = RuleName.STRONG_SUBS if proof.conclusion.mode is Mode.STRONG else RuleName.WEAK_SUBS
    return infer(rule, proof, args=(f,))


def _repl(proof: Proof, g) -> Proof:
    return infer(RuleName.STRONG_REPL, proof, args=(g,))


def commutation_proof(i: Location, j: Location, sig: MemorySignature | None = None) -> Proof:
    """
    Kernel proof of `commutation_goal(i, j)`.

    Raises:
        LocationClash: If `i == j`
    """
    if i == j:
        raise LocationClash(i)
    if sig is not None:
        sig.require(i)
        sig.require(j)

    vi, vj = Val(i), Val(j)
    u, l = Update(i), Lookup(j)
    fj, fi = Final(vj), Final(vi)
    inv = inv_pi1(vi)
    p = prod(Id(vi), l)
    q = perm_prod(u, Id(vj))
    p1, p2 = Pi1(UNIT, vj), Pi2(UNIT, vj)
    pi1_vv, pi2_vv = Pi1(vi, vj), Pi2(vi, vj)
    pi1_vu, pi2_vu = Pi1(vi, UNIT), Pi2(vi, UNIT)
    r = Comp(p, inv)
    t = Comp(q, r)

    q_pi1, q_pi2 = derive_perm_prod_projections(u, Id(vj), "rwpure")
    p_pi1, p_pi2 = derive_prod_projections(Id(vi), l, "purero")
    inv_pi1_proj, inv_pi2_proj = derive_pair_projections(Id(vi), fi, "purepure")

    # effects: final o (lookup j o update i) == final o rhs
    step_1_1 = strong_chain(
        _assoc(fj, p2, t),
        _subs(derive_E_0_3(fj, p2, p1), t),
    )
    step_1_2 = strong_chain(
        _assoc(p1, q, r),
        _subs(q_pi1, r),
        symmetric(_assoc(u, pi1_vv, r)),
    )
    step_1_3 = _repl(
        strong_chain(
            _assoc(pi1_vv, p, inv),
            _subs(strong_chain(p_pi1, infer(RuleName.ID_TGT, args=(pi1_vu,))), inv),
        ),
        u,
    )
    step_1_4 = _repl(inv_pi1_proj, u)
    step_1_5 = strong_chain(
        _assoc(fj, l, u),
        _subs(derive_E_1_4(l), u),
        infer(RuleName.ID_TGT, args=(u,)),
        symmetric(infer(RuleName.ID_SRC, args=(u,))),
    )
    effects = symmetric(
        strong_chain(
            labelled(step_1_1, "1.1"),
            labelled(step_1_2, "1.2"),
            labelled(step_1_3, "1.3"),
            labelled(step_1_4, "1.4"),
            symmetric(labelled(step_1_5, "1.5")),
        )
    )

    # results: lookup j o update i ~ rhs
    step_2_1 = infer(RuleName.AXIOM2, args=(j, i), sig=sig)
    step_2_2 = symmetric(to_weak(_repl(inv_pi2_proj, l)))
    step_2_3 = weak_chain(
        _assoc(p2, q, r),
        _subs(weak_chain(q_pi2, infer(RuleName.ID_TGT, args=(pi2_vv,))), r),
    )
    step_2_4 = to_weak(
        strong_chain(
            _assoc(pi2_vv, p, inv),
            _subs(p_pi2, inv),
            symmetric(_assoc(l, pi2_vu, inv)),
        )
    )
    results = weak_chain(
        labelled(step_2_1, "2.1"),
        labelled(step_2_2, "2.2"),
        symmetric(weak_chain(labelled(step_2_3, "2.3"), labelled(step_2_4, "2.4"))),
    )

    return infer(RuleName.COMP_FINAL_UNIQUE, effects, results, label="commutation")


def commutation_update_lookup(i: Location, j: Location, sig: MemorySignature) -> ProofScript:
    """
    The update/lookup commutation theorem for distinct locations `i` and `j` as a script.

    Raises:
        LocationClash: If `i == j`
        UnknownLocation: If either location is not declared in `sig`
    """
    proof = commutation_proof(i, j, sig)
    return ProofScript(
        name=f"commutation_update_lookup_{i}_{j}",
        signature=sig,
        goal=commutation_goal(i, j),
        proof=proof,
        description=f"lookup {j} commutes with update {i}",
        step_labels=COMMUTATION_STEPS,
    )


def axiom_corpus(sig: MemorySignature) -> list[ProofScript]:
    """
    One-node scripts for every axiom instance over `sig`, plus one negative fixture per
    location claiming the strong form of the first axiom.
    """
    scripts: list[ProofScript] = []
    for i in sig.locations:
        ax1 = infer(RuleName.AXIOM1, args=(i,), sig=sig, label=f"axiom1_{i}")
        assert ax1.conclusion is not None
        scripts.append(ProofScript(f"axiom1_{i}", sig, ax1.conclusion, ax1, description="lookup after update"))
    for i in sig.locations:
        for k in sig.locations:
            if i == k:
                continue
            ax2 = infer(RuleName.AXIOM2, args=(i, k), sig=sig, label=f"axiom2_{i}_{k}")
            assert ax2.conclusion is not None
            scripts.append(
                ProofScript(f"axiom2_{i}_{k}", sig, ax2.conclusion, ax2, description="lookup after a foreign update")
            )
    for i in sig.locations:
        claim = strong(Comp(Lookup(i), Update(i)), Id(Val(i)))
        forged = Proof(RuleName.AXIOM1, (), (i,), claim, label=f"strong_axiom1_{i}")
        scripts.append(
            ProofScript(
                f"strong_axiom1_{i}",
                sig,
                claim,
                forged,
                description="strong form of the first axiom; not derivable and false",
                expect=Expectation(kernel_accepts=False, semantics_holds=False),
            )
        )
    return scripts


def node_at(proof: Proof, path: tuple[str, ...]) -> Proof | None:
    """The node a rejection path names, or None when no node has that path."""
    segments = list(path)
    if proof.label:
        if not segments or segments[0] != proof.label:
            return None
        segments = segments[1:]
    node = proof
    for segment in segments:
        found = [p for index, p in enumerate(node.premises) if (p.label or str(index)) == segment]
        if not found:
            return None
        node = found[0]
    return node


def check_script(script: ProofScript) -> Verdict:
    """
    Kernel verdict for the script's proof, additionally requiring it to conclude the goal.

    A derived lemma the loader refused is rejected at its own node with the recorded reason.
    """
    verdict = check_proof(script.proof, script.signature)
    if verdict.rejection is not None:
        node = node_at(script.proof, verdict.rejection.path)
        refusal = script.refusals.get(node) if node is not None else None
        if refusal is not None:
            return Verdict(replace(verdict.rejection, reason=refusal.reason, detail=refusal.detail))
        return verdict
    if script.proof.conclusion != script.goal:
        root = (script.proof.label,) if script.proof.label else ()
        return Verdict(
            Rejection(
                root,
                RejectionReason.SCHEMA_MISMATCH,
                f"The proof concludes {script.proof.conclusion}, but the goal is {script.goal}",
            )
        )
    return verdict


def labels_in(proof: Proof) -> list[str]:
    """Labels of the proof's nodes in depth-first order, each listed once."""
    seen: list[str] = []

    def visit(node: Proof) -> None:
        for premise in node.premises:
            visit(premise)
        if node.label is not None and node.label not in seen:
            seen.append(node.label)

    visit(proof)
    return seen


def swapped(script: ProofScript) -> ProofScript:
    """The same theorem with its sides exchanged, proved by one symmetry step."""
    return replace(script, name=f"{script.name}_swapped", goal=script.goal.flipped(), proof=symmetric(script.proof))