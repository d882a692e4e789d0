import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stateproof.logic.decorations import Kind
from stateproof.logic.errors import EnumerationTooLarge, NoInhabitant, ShapeMismatch, UnknownLocation
from stateproof.logic.kernel import Mode, strong, weak
from stateproof.logic.memory import MemorySignature, declare_signature, stores
from stateproof.logic.semantics import (
    UNIT_VAL,
    Base,
    PairVal,
    check_semantic,
    enumerate_values,
    eval_term,
    inhabits,
    is_store_independent,
    is_store_preserving,
)
from stateproof.logic.terms import UNIT, Comp, Final, Id, Lookup, Pair, Pi1, Prod, Update, Val
from stateproof.proofs.generators import RandomTermGenerator

VI, VJ = Val("i"), Val("j")
SIG = declare_signature(["i", "j"], {"i": (0, 1), "j": (0, 1)})


class TestValues:
    def test_enumerate_products(self, sig: MemorySignature) -> None:
        values = enumerate_values(Prod(VI, VJ), sig)
        assert len(values) == 4
        assert values[1] == PairVal(Base("i", 0), Base("j", 1))

    def test_unit_has_one_value(self, sig: MemorySignature) -> None:
        assert enumerate_values(UNIT, sig) == [UNIT_VAL]

    def test_inhabits_checks_carrier(self, sig: MemorySignature) -> None:
        assert inhabits(Base("i", 1), VI, sig)
        assert not inhabits(Base("i", 2), VI, sig)
        assert not inhabits(Base("j", 1), VI, sig)


class TestEval:
    def test_update_then_lookup(self, sig: MemorySignature) -> None:
        store = next(stores(sig))
        result, after = eval_term(Comp(Lookup("i"), Update("i")), Base("i", 1), store)
        assert result == Base("i", 1)
        assert after["i"] == 1

    def test_pair_keeps_second_store(self, sig: MemorySignature) -> None:
        store = next(stores(sig))
        pair = Pair(Comp(Lookup("i"), Final(VI)), Update("i"))
        result, after = eval_term(pair, Base("i", 1), store)
        assert result == PairVal(Base("i", 0), UNIT_VAL)
        assert after["i"] == 1

    def test_pair_drops_first_store(self, sig: MemorySignature) -> None:
        store = next(stores(sig))
        pair = Pair(Update("i"), Id(VI))
        _, after = eval_term(pair, Base("i", 1), store)
        assert after == store

    def test_shape_mismatch(self, sig: MemorySignature) -> None:
        with pytest.raises(ShapeMismatch):
            eval_term(Lookup("i"), Base("i", 0), next(stores(sig)))


class TestCheckSemantic:
    def test_strong_axiom1_is_refuted(self, sig: MemorySignature) -> None:
        result = check_semantic(strong(Comp(Lookup("i"), Update("i")), Id(VI)), sig)
        assert result.mode is Mode.STRONG
        assert not result.holds
        assert result.cases_checked == 3
        found = result.counterexample
        assert found is not None
        assert found.input == Base("i", 0)
        assert found.store.as_dict() == {"i": 1, "j": 0}
        assert found.lhs_out[1].as_dict() == {"i": 0, "j": 0}
        assert found.rhs_out[1] == found.store

    def test_weak_axiom1_holds(self, sig: MemorySignature) -> None:
        result = check_semantic(weak(Comp(Lookup("i"), Update("i")), Id(VI)), sig)
        assert result.holds
        assert result.cases_checked == 8
        assert result.counterexample is None

    def test_axiom2_holds(self, sig3: MemorySignature) -> None:
        eq = weak(Comp(Lookup("j"), Update("i")), Comp(Lookup("j"), Final(VI)))
        assert check_semantic(eq, sig3).holds

    def test_axiom2_needs_distinct_locations(self, sig: MemorySignature) -> None:
        eq = weak(Comp(Lookup("i"), Update("i")), Comp(Lookup("i"), Final(VI)))
        assert not check_semantic(eq, sig).holds

    def test_unknown_location(self, sig: MemorySignature) -> None:
        eq = weak(Comp(Lookup("k"), Update("k")), Id(Val("k")))
        with pytest.raises(UnknownLocation):
            check_semantic(eq, sig)

    def test_enumeration_limit(self, sig: MemorySignature) -> None:
        eq = weak(Comp(Lookup("i"), Update("i")), Id(VI))
        with pytest.raises(EnumerationTooLarge) as excinfo:
            check_semantic(eq, sig, max_cases=3)
        assert excinfo.value.cases == 8


class TestStoreProperties:
    def test_lookup(self, sig: MemorySignature) -> None:
        assert is_store_preserving(Lookup("i"), sig)
        assert not is_store_independent(Lookup("i"), sig)

    def test_update(self, sig: MemorySignature) -> None:
        assert not is_store_preserving(Update("i"), sig)
        assert is_store_independent(Update("i"), sig)

    def test_projection(self, sig: MemorySignature) -> None:
        assert is_store_preserving(Pi1(VI, VJ), sig)
        assert is_store_independent(Pi1(VI, VJ), sig)


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from([Kind.PURE, Kind.RO]))
def test_accessors_preserve_the_store(rng: random.Random, max_kind: Kind) -> None:
    gen = RandomTermGenerator(SIG, rng, max_depth=3)
    try:
        term = gen.term(gen.obj(), gen.obj(), max_kind=max_kind)
    except NoInhabitant:
        return
    assert is_store_preserving(term, SIG)
    if max_kind is Kind.PURE:
        assert is_store_independent(term, SIG)
