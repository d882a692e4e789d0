from dataclasses import replace

import pytest

from stateproof.logic.errors import InvalidProof, TypeMismatch
from stateproof.logic.kernel import (
    Equation,
    KernelError,
    Mode,
    Proof,
    RejectionReason,
    RuleName,
    check_proof,
    conclude,
    infer,
    instantiate,
    labelled,
    rule_arity,
    strong,
    weak,
)
from stateproof.logic.memory import MemorySignature, declare_signature
from stateproof.logic.terms import UNIT, Comp, Final, Id, Lookup, Pair, Pi1, Pi2, Prod, Update, Val

VI, VJ = Val("i"), Val("j")
LJ_UI = Comp(Lookup("j"), Update("i"))


def _reason(rule, premises=(), args=(), sig=None) -> RejectionReason:
    with pytest.raises(KernelError) as excinfo:
        instantiate(rule, list(premises), list(args), sig)
    return excinfo.value.reason


class TestEquation:
    def test_sides_must_be_parallel(self) -> None:
        with pytest.raises(TypeMismatch):
            strong(Lookup("i"), Lookup("j"))

    def test_printing(self) -> None:
        assert str(weak(Comp(Lookup("i"), Update("i")), Id(VI))) == "lookup i o update i ~ id[V(i)]"
        assert str(strong(Id(VI), Id(VI))) == "id[V(i)] == id[V(i)]"

    def test_flipped(self) -> None:
        eq = weak(Comp(Lookup("i"), Update("i")), Id(VI))
        assert eq.flipped() == Equation(Id(VI), eq.lhs, Mode.WEAK)


class TestRuleName:
    @pytest.mark.parametrize(
        "text, rule",
        [
            ("StrongTrans", RuleName.STRONG_TRANS),
            ("strong_trans", RuleName.STRONG_TRANS),
            ("comp_final_unique", RuleName.COMP_FINAL_UNIQUE),
            ("local_global", RuleName.LOCAL_TO_GLOBAL),
            ("axiom2", RuleName.AXIOM2),
        ],
    )
    def test_resolve(self, text: str, rule: RuleName) -> None:
        assert RuleName.resolve(text) is rule

    def test_unknown(self) -> None:
        assert RuleName.resolve("StrongAxiom1") is None

    def test_arity(self) -> None:
        assert rule_arity(RuleName.ASSOC) == (0, 3)
        assert rule_arity(RuleName.STRONG_TRANS) == (2, 0)
        assert rule_arity(RuleName.LOCAL_TO_GLOBAL) == (None, 0)


class TestInstantiate:
    def test_strong_refl(self) -> None:
        assert instantiate(RuleName.STRONG_REFL, [], [LJ_UI]) == strong(LJ_UI, LJ_UI)

    def test_assoc(self) -> None:
        h, g, f = Final(VJ), Lookup("j"), Update("i")
        assert instantiate("Assoc", [], [h, g, f]) == strong(Comp(h, Comp(g, f)), Comp(Comp(h, g), f))

    def test_identities(self) -> None:
        assert instantiate(RuleName.ID_SRC, [], [LJ_UI]) == strong(Comp(LJ_UI, Id(VI)), LJ_UI)
        assert instantiate(RuleName.ID_TGT, [], [LJ_UI]) == strong(Comp(Id(VJ), LJ_UI), LJ_UI)

    def test_substitution_and_replacement(self) -> None:
        ax = weak(Comp(Lookup("i"), Update("i")), Id(VI))
        lookup = Lookup("i")
        assert instantiate(RuleName.WEAK_SUBS, [ax], [lookup]) == weak(
            Comp(Comp(Lookup("i"), Update("i")), lookup), Comp(Id(VI), lookup)
        )
        final = Final(VI)
        assert instantiate(RuleName.PURE_WEAK_REPL, [ax], [final]) == weak(Comp(final, ax.lhs), Comp(final, ax.rhs))

    def test_transitivity_needs_matching_middle(self) -> None:
        a = strong(LJ_UI, LJ_UI)
        b = strong(Comp(Id(VJ), LJ_UI), LJ_UI)
        assert _reason(RuleName.STRONG_TRANS, [a, b]) is RejectionReason.SCHEMA_MISMATCH
        assert instantiate(RuleName.STRONG_TRANS, [b, a]) == b

    def test_mode_of_premise_is_checked(self) -> None:
        ax = weak(Comp(Lookup("i"), Update("i")), Id(VI))
        assert _reason(RuleName.STRONG_SYM, [ax]) is RejectionReason.SCHEMA_MISMATCH

    def test_unknown_rule(self) -> None:
        assert _reason("StrongAxiom1", [], ["i"]) is RejectionReason.UNKNOWN_RULE

    def test_premise_and_argument_counts(self) -> None:
        assert _reason(RuleName.STRONG_SYM, []) is RejectionReason.SCHEMA_MISMATCH
        assert _reason(RuleName.ASSOC, [], [Id(VI)]) is RejectionReason.SCHEMA_MISMATCH

    def test_ill_typed_instance_is_a_type_mismatch(self) -> None:
        assert _reason(RuleName.ASSOC, [], [Update("i"), Lookup("j"), Id(UNIT)]) is RejectionReason.TYPE_MISMATCH

    def test_weak_final_unique(self) -> None:
        f, g = Comp(Final(VJ), LJ_UI), Update("i")
        assert instantiate(RuleName.WEAK_FINAL_UNIQUE, [], [f, g]) == weak(f, g)
        assert _reason(RuleName.WEAK_FINAL_UNIQUE, [], [Id(VI), Id(VI)]) is RejectionReason.TYPE_MISMATCH

    def test_comp_final_unique(self) -> None:
        f, g = LJ_UI, Comp(Lookup("j"), Final(VI))
        final = Final(VJ)
        effect = strong(Comp(final, f), Comp(final, g))
        assert instantiate(RuleName.COMP_FINAL_UNIQUE, [effect, weak(f, g)]) == strong(f, g)
        wrong = strong(Comp(final, f), Comp(final, f))
        assert _reason(RuleName.COMP_FINAL_UNIQUE, [wrong, weak(f, g)]) is RejectionReason.SCHEMA_MISMATCH

    def test_pair_projections(self) -> None:
        f1, f2 = Comp(Lookup("j"), Final(VI)), Update("i")
        pair = Pair(f1, f2)
        assert instantiate(RuleName.WEAK_PROJ_PI1, [], [f1, f2]) == weak(Comp(Pi1(VJ, UNIT), pair), f1)
        assert instantiate(RuleName.STRONG_PROJ_PI2, [], [f1, f2]) == strong(Comp(Pi2(VJ, UNIT), pair), f2)

    def test_weak_pair_unicity(self) -> None:
        f = Pair(Id(VI), Final(VI))
        g = Pair(Id(VI), Comp(Final(VI), Id(VI)))
        p, q = Pi1(VI, UNIT), Pi2(VI, UNIT)
        premises = [weak(Comp(p, f), Comp(p, g)), weak(Comp(q, f), Comp(q, g))]
        assert instantiate(RuleName.WEAK_PAIR_UNICITY, premises) == weak(f, g)
        swapped = [premises[1], premises[0]]
        assert _reason(RuleName.WEAK_PAIR_UNICITY, swapped) is RejectionReason.SCHEMA_MISMATCH

    def test_axioms(self, sig: MemorySignature) -> None:
        assert instantiate(RuleName.AXIOM1, [], ["i"], sig) == weak(Comp(Lookup("i"), Update("i")), Id(VI))
        assert instantiate(RuleName.AXIOM2, [], ["j", "i"], sig) == weak(
            Comp(Lookup("j"), Update("i")), Comp(Lookup("j"), Final(VI))
        )

    def test_axiom_location_must_be_declared(self, sig: MemorySignature) -> None:
        assert _reason(RuleName.AXIOM1, [], ["k"], sig) is RejectionReason.UNKNOWN_LOCATION

    def test_axiom_takes_a_location(self) -> None:
        assert _reason(RuleName.AXIOM1, [], [Id(VI)]) is RejectionReason.SCHEMA_MISMATCH


class TestSideConditions:
    def test_pure_weak_repl_needs_a_pure_outer_term(self) -> None:
        ax = weak(Comp(Lookup("i"), Update("i")), Id(VI))
        assert _reason(RuleName.PURE_WEAK_REPL, [ax], [Update("i")]) is RejectionReason.SIDE_CONDITION_VIOLATED
        assert _reason(RuleName.PURE_WEAK_REPL, [ax], [Comp(Lookup("j"), Final(VI))]) is (
            RejectionReason.SIDE_CONDITION_VIOLATED
        )

    def test_axiom2_needs_distinct_locations(self, sig: MemorySignature) -> None:
        assert _reason(RuleName.AXIOM2, [], ["i", "i"], sig) is RejectionReason.LOCATION_CLASH

    def test_weak_proj_pi1_needs_an_accessor_first(self) -> None:
        args = [Update("i"), Final(VI)]
        assert _reason(RuleName.WEAK_PROJ_PI1, [], args) is RejectionReason.SIDE_CONDITION_VIOLATED
        assert _reason(RuleName.STRONG_PROJ_PI2, [], args) is RejectionReason.SIDE_CONDITION_VIOLATED

    def test_weak_to_strong_needs_accessors(self, sig: MemorySignature) -> None:
        ax = instantiate(RuleName.AXIOM1, [], ["i"], sig)
        assert _reason(RuleName.RO_WEAK_TO_STRONG, [ax]) is RejectionReason.SIDE_CONDITION_VIOLATED
        ro = weak(Comp(Lookup("j"), Final(VI)), Comp(Lookup("j"), Final(VI)))
        assert instantiate(RuleName.RO_WEAK_TO_STRONG, [ro]) == strong(ro.lhs, ro.rhs)


class TestLocalToGlobal:
    def _premises(self, f, g, locations):
        return [weak(Comp(Lookup(i), f), Comp(Lookup(i), g)) for i in locations]

    def test_one_premise_per_location(self, sig: MemorySignature) -> None:
        f, g = Comp(Update("i"), Lookup("i")), Id(UNIT)
        conclusion = instantiate(RuleName.LOCAL_TO_GLOBAL, self._premises(f, g, ["i", "j"]), [], sig)
        assert conclusion == strong(f, g)

    def test_missing_premise(self, sig: MemorySignature) -> None:
        f, g = Comp(Update("i"), Lookup("i")), Id(UNIT)
        premises = self._premises(f, g, ["i"])
        assert _reason(RuleName.LOCAL_TO_GLOBAL, premises, [], sig) is RejectionReason.MISSING_LOCATION_PREMISE

    def test_premises_follow_declaration_order(self, sig: MemorySignature) -> None:
        f, g = Comp(Update("i"), Lookup("i")), Id(UNIT)
        premises = self._premises(f, g, ["j", "i"])
        assert _reason(RuleName.LOCAL_TO_GLOBAL, premises, [], sig) is RejectionReason.MISSING_LOCATION_PREMISE

    def test_needs_a_signature(self) -> None:
        f, g = Comp(Update("i"), Lookup("i")), Id(UNIT)
        assert _reason(RuleName.LOCAL_TO_GLOBAL, self._premises(f, g, ["i", "j"])) is RejectionReason.SCHEMA_MISMATCH

    def test_signature_without_locations(self) -> None:
        empty = declare_signature([], {})
        assert _reason(RuleName.LOCAL_TO_GLOBAL, [], [], empty) is RejectionReason.SCHEMA_MISMATCH

        proof = Proof(RuleName.LOCAL_TO_GLOBAL, (), (), strong(Id(UNIT), Final(UNIT)))
        verdict = check_proof(proof, empty)
        assert verdict.rejection is not None
        assert verdict.rejection.reason is RejectionReason.SCHEMA_MISMATCH
        assert verdict.rejection.path_text == "<root>"


class TestCheckProof:
    def test_accepts_inferred_proof(self, sig: MemorySignature) -> None:
        ax = infer(RuleName.AXIOM1, args=("i",), sig=sig)
        proof = infer(RuleName.WEAK_SYM, ax)
        verdict = check_proof(proof, sig)
        assert verdict.ok
        assert conclude(proof, sig) == weak(Id(VI), Comp(Lookup("i"), Update("i")))

    def test_rejects_forged_conclusion(self, sig: MemorySignature) -> None:
        claim = strong(Comp(Lookup("i"), Update("i")), Id(VI))
        forged = Proof(RuleName.AXIOM1, (), ("i",), claim, label="forged")
        verdict = check_proof(forged, sig)
        assert not verdict.ok
        assert verdict.rejection is not None
        assert verdict.rejection.reason is RejectionReason.SCHEMA_MISMATCH
        assert verdict.rejection.path == ("forged",)

    @pytest.mark.parametrize("rule", [RuleName.AXIOM1, "axiom1", "Axiom1"])
    def test_forged_conclusion_names_the_rule(self, sig: MemorySignature, rule) -> None:
        forged = Proof(rule, (), ("i",), strong(Comp(Lookup("i"), Update("i")), Id(VI)))
        verdict = check_proof(forged, sig)
        assert verdict.rejection is not None
        assert verdict.rejection.reason is RejectionReason.SCHEMA_MISMATCH
        assert "what Axiom1 yields" in verdict.rejection.detail

    def test_rejection_path_uses_labels_then_indices(self, sig: MemorySignature) -> None:
        good = labelled(infer(RuleName.AXIOM1, args=("i",), sig=sig), "ax")
        bad = Proof(RuleName.AXIOM2, (), ("j", "j"), weak(Comp(Lookup("j"), Update("j")), Comp(Lookup("j"), Final(VJ))))
        top = Proof(RuleName.WEAK_TRANS, (good, bad), (), None, label="top")
        verdict = check_proof(top, sig)
        assert verdict.rejection is not None
        assert verdict.rejection.reason is RejectionReason.LOCATION_CLASH
        assert verdict.rejection.path == ("top", "1")
        assert verdict.rejection.path_text == "top/1"

    def test_root_path_without_label(self, sig: MemorySignature) -> None:
        unknown = Proof("StrongAxiom1", (), ("i",), strong(Comp(Lookup("i"), Update("i")), Id(VI)))
        verdict = check_proof(unknown, sig)
        assert verdict.rejection is not None
        assert verdict.rejection.reason is RejectionReason.UNKNOWN_RULE
        assert verdict.rejection.path_text == "<root>"

    def test_unknown_location_in_conclusion(self, sig: MemorySignature) -> None:
        proof = infer(RuleName.STRONG_REFL, args=(Lookup("k"),))
        verdict = check_proof(proof, sig)
        assert verdict.rejection is not None
        assert verdict.rejection.reason is RejectionReason.UNKNOWN_LOCATION

    def test_missing_premise_conclusion(self, sig: MemorySignature) -> None:
        hollow = Proof(RuleName.STRONG_REFL, (), (Id(VI),), None, label="hollow")
        top = Proof(RuleName.STRONG_SYM, (hollow,), (), strong(Id(VI), Id(VI)))
        verdict = check_proof(top, sig)
        assert verdict.rejection is not None
        assert verdict.rejection.path == ("hollow",)

    def test_conclude_raises_on_rejection(self, sig: MemorySignature) -> None:
        forged = Proof(RuleName.AXIOM1, (), ("i",), strong(Comp(Lookup("i"), Update("i")), Id(VI)))
        with pytest.raises(InvalidProof):
            conclude(forged, sig)

    def test_relabelling_keeps_verdict(self, sig: MemorySignature) -> None:
        proof = infer(RuleName.AXIOM1, args=("i",), sig=sig)
        assert check_proof(replace(proof, label="renamed"), sig).ok

    def test_product_boundaries_in_arguments(self, sig: MemorySignature) -> None:
        proof = infer(RuleName.ID_SRC, args=(Pi1(VI, Prod(VJ, UNIT)),))
        assert check_proof(proof, sig).ok
