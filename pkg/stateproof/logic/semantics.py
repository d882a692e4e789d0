"""
State-passing interpretation of terms over a finite signature.

A term `f : X -> Y` denotes a function from (value of X, store) to (value of Y, store).
`check_semantic` decides strong and weak equations by enumerating every input and store.
"""

import itertools
import logging
from collections.abc import Iterator
from dataclasses import dataclass

from ..config import settings
from .errors import EnumerationTooLarge, ShapeMismatch
from .kernel import Equation, Mode
from .memory import Location, MemorySignature, Store, Value, stores
from .terms import Comp, Final, Id, Lookup, ObjTy, Pair, Pi1, Pi2, Prod, Term, Unit, Update, Val, check_term, check_type

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class UnitVal:
    def __str__(self) -> str:
        return "()"


@dataclass(frozen=True)
class Base:
    location: Location
    value: Value

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class PairVal:
    left: "SemValue"
    right: "SemValue"

    def __str__(self) -> str:
        return f"({self.left}, {self.right})"


SemValue = UnitVal | Base | PairVal

UNIT_VAL = UnitVal()


def enumerate_values(obj: ObjTy, sig: MemorySignature) -> list[SemValue]:
    """Every inhabitant of `obj`; products vary their right component fastest."""
    check_type(obj, sig)
    return list(_values(obj, sig))


def _values(obj: ObjTy, sig: MemorySignature) -> Iterator[SemValue]:
    match obj:
        case Unit():
            yield UNIT_VAL
        case Val(location=location):
            for value in sig.carrier(location):
                yield Base(location, value)
        case Prod(left=left, right=right):
            for a, b in itertools.product(list(_values(left, sig)), list(_values(right, sig))):
                yield PairVal(a, b)


def conforms(value: SemValue, obj: ObjTy) -> bool:
    """Shape check only: carriers are not consulted."""
    match obj:
        case Unit():
            return isinstance(value, UnitVal)
        case Val(location=location):
            return isinstance(value, Base) and value.location == location
        case Prod(left=left, right=right):
            return isinstance(value, PairVal) and conforms(value.left, left) and conforms(value.right, right)
    return False


def inhabits(value: SemValue, obj: ObjTy, sig: MemorySignature) -> bool:
    if not conforms(value, obj):
        return False
    match value:
        case Base(location=location, value=raw):
            return raw in sig.carrier(location)
        case PairVal(left=left, right=right):
            assert isinstance(obj, Prod)
            return inhabits(left, obj.left, sig) and inhabits(right, obj.right, sig)
    return True


def eval_term(term: Term, value: SemValue, store: Store) -> tuple[SemValue, Store]:
    """
    Run `term` on `value` in `store`.

    Raises:
        ShapeMismatch: If `value` does not have the shape of `term.dom`
    """
    if not conforms(value, term.dom):
        raise ShapeMismatch(f"Value {value} does not inhabit {term.dom}, the domain of {term}")
    return _eval(term, value, store)


def _eval(term: Term, value: SemValue, store: Store) -> tuple[SemValue, Store]:
    match term:
        case Id():
            return value, store
        case Final():
            return UNIT_VAL, store
        case Pi1():
            assert isinstance(value, PairVal)
            return value.left, store
        case Pi2():
            assert isinstance(value, PairVal)
            return value.right, store
        case Lookup(location=location):
            return Base(location, store[location]), store
        case Update(location=location):
            assert isinstance(value, Base)
            return UNIT_VAL, store.set(location, value.value)
        case Comp(g=g, f=f):
            middle, store = _eval(f, value, store)
            return _eval(g, middle, store)
        case Pair(first=first, second=second):
            # the first component reads the initial store and its own store is dropped
            left, _ = _eval(first, value, store)
            right, after = _eval(second, value, store)
            return PairVal(left, right), after
    raise ShapeMismatch(f"Cannot evaluate {term!r}")


@dataclass(frozen=True)
class Counterexample:
    input: SemValue
    store: Store
    lhs_out: tuple[SemValue, Store]
    rhs_out: tuple[SemValue, Store]

    def __str__(self) -> str:
        (lv, ls), (rv, rs) = self.lhs_out, self.rhs_out
        return f"input {self.input}, store {self.store}: lhs gives {lv} with {ls}, rhs gives {rv} with {rs}"


@dataclass(frozen=True)
class SemanticResult:
    mode: Mode
    holds: bool
    cases_checked: int
    counterexample: Counterexample | None = None


def _cases(obj: ObjTy, sig: MemorySignature, max_cases: int | None) -> list[SemValue]:
    inputs = enumerate_values(obj, sig)
    limit = settings.semantic_config.max_cases if max_cases is None else max_cases
    total = len(inputs) * sig.store_count
    if total > limit:
        raise EnumerationTooLarge(total, limit)
    return inputs


def check_semantic(eq: Equation, sig: MemorySignature, max_cases: int | None = None) -> SemanticResult:
    """
    Decide `eq` over every (input, store) pair, inputs outermost.

    Strong equations compare results and final stores, weak ones results only. The first
    failing pair in enumeration order is reported.

    Raises:
        UnknownLocation: If either side mentions an undeclared location
        EnumerationTooLarge: If the case count exceeds the configured limit
    """
    check_term(eq.lhs, sig)
    check_term(eq.rhs, sig)
    inputs = _cases(eq.dom, sig, max_cases)

    checked = 0
    for value in inputs:
        for store in stores(sig):
            checked += 1
            lhs_out = _eval(eq.lhs, value, store)
            rhs_out = _eval(eq.rhs, value, store)
            same = lhs_out == rhs_out if eq.mode is Mode.STRONG else lhs_out[0] == rhs_out[0]
            if not same:
                logger.debug(f"Counterexample for {eq} after {checked} case(s)")
                return SemanticResult(eq.mode, False, checked, Counterexample(value, store, lhs_out, rhs_out))
    return SemanticResult(eq.mode, True, checked)


def is_store_preserving(term: Term, sig: MemorySignature, max_cases: int | None = None) -> bool:
    """True iff `term` leaves every store unchanged."""
    check_term(term, sig)
    return all(
        _eval(term, value, store)[1] == store for value in _cases(term.dom, sig, max_cases) for store in stores(sig)
    )


def is_store_independent(term: Term, sig: MemorySignature, max_cases: int | None = None) -> bool:
    """True iff the result of `term` at a fixed input is the same in every store."""
    check_term(term, sig)
    for value in _cases(term.dom, sig, max_cases):
        results = {_eval(term, value, store)[0] for store in stores(sig)}
        if len(results) > 1:
            return False
    return True
