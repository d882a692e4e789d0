"""
Typed closed terms of the decorated language.

Orientation is dom -> cod throughout: `Comp(g, f)` runs `f` first. (The Coq development
writes `term X Y` for a map from Y to X; files and printing here always use `X -> Y`.)

Every node checks its own typing invariant on construction, so an ill-typed `Term` cannot
exist. The `mk_*` constructors additionally check locations against a signature.
"""

from collections.abc import Iterator
from dataclasses import dataclass, field

from .errors import TypeMismatch, UnknownLocation
from .memory import Location, MemorySignature

# --------------------------------------------------------------------------- object types


@dataclass(frozen=True)
class ObjTy:
    """Object of the category: unit, a location's value type, or a binary product."""


@dataclass(frozen=True)
class Unit(ObjTy):
    def __str__(self) -> str:
        return "unit"


@dataclass(frozen=True)
class Val(ObjTy):
    location: Location

    def __str__(self) -> str:
        return f"V({self.location})"


@dataclass(frozen=True)
class Prod(ObjTy):
    left: ObjTy
    right: ObjTy

    def __str__(self) -> str:
        left = f"({self.left})" if isinstance(self.left, Prod) else str(self.left)
        return f"{left}*{self.right}"


UNIT = Unit()


def type_locations(obj: ObjTy) -> Iterator[Location]:
    if isinstance(obj, Val):
        yield obj.location
    elif isinstance(obj, Prod):
        yield from type_locations(obj.left)
        yield from type_locations(obj.right)


def check_type(obj: ObjTy, sig: MemorySignature) -> ObjTy:
    """Return `obj` unchanged if every location it mentions is declared in `sig`."""
    if not isinstance(obj, ObjTy):
        raise TypeMismatch(f"Expected an object type, got {obj!r}")
    for location in type_locations(obj):
        sig.require(location)
    return obj


# --------------------------------------------------------------------------- terms


@dataclass(frozen=True)
class Term:
    """Base of the term AST; `dom` and `cod` are derived from the node on construction."""

    dom: ObjTy = field(init=False, repr=False)
    cod: ObjTy = field(init=False, repr=False)

    def __post_init__(self) -> None:
        dom, cod = self._boundary()
        object.__setattr__(self, "dom", dom)
        object.__setattr__(self, "cod", cod)

    def _boundary(self) -> tuple[ObjTy, ObjTy]:
        raise NotImplementedError

    def children(self) -> tuple["Term", ...]:
        return ()


@dataclass(frozen=True)
class Id(Term):
    obj: ObjTy

    def _boundary(self) -> tuple[ObjTy, ObjTy]:
        return self.obj, self.obj

    def __str__(self) -> str:
        return f"id[{self.obj}]"


@dataclass(frozen=True)
class Comp(Term):
    """`g o f`: first `f`, then `g`."""

    g: Term
    f: Term

    def _boundary(self) -> tuple[ObjTy, ObjTy]:
        if self.f.cod != self.g.dom:
            raise TypeMismatch(
                f"Cannot compose {self.g} after {self.f}: {self.f.cod} is not {self.g.dom}",
                expected=self.g.dom,
                actual=self.f.cod,
            )
        return self.f.dom, self.g.cod

    def children(self) -> tuple[Term, ...]:
        return (self.g, self.f)

    def __str__(self) -> str:
        g = f"({self.g})" if isinstance(self.g, Comp) else str(self.g)
        return f"{g} o {self.f}"


@dataclass(frozen=True)
class Final(Term):
    obj: ObjTy

    def _boundary(self) -> tuple[ObjTy, ObjTy]:
        return self.obj, UNIT

    def __str__(self) -> str:
        return f"final[{self.obj}]"


@dataclass(frozen=True)
class Pair(Term):
    """Left pair: `first` is read on the initial state, `second` carries the effect."""

    first: Term
    second: Term

    def _boundary(self) -> tuple[ObjTy, ObjTy]:
        if self.first.dom != self.second.dom:
            raise TypeMismatch(
                f"Pair components have different domains: {self.first.dom} and {self.second.dom}",
                expected=self.first.dom,
                actual=self.second.dom,
            )
        return self.first.dom, Prod(self.first.cod, self.second.cod)

    def children(self) -> tuple[Term, ...]:
        return (self.first, self.second)

    def __str__(self) -> str:
        return f"pair({self.first}, {self.second})"


@dataclass(frozen=True)
class Pi1(Term):
    left: ObjTy
    right: ObjTy

    def _boundary(self) -> tuple[ObjTy, ObjTy]:
        return Prod(self.left, self.right), self.left

    def __str__(self) -> str:
        return f"pi1[{self.left},{self.right}]"


@dataclass(frozen=True)
class Pi2(Term):
    left: ObjTy
    right: ObjTy

    def _boundary(self) -> tuple[ObjTy, ObjTy]:
        return Prod(self.left, self.right), self.right

    def __str__(self) -> str:
        return f"pi2[{self.left},{self.right}]"


@dataclass(frozen=True)
class Lookup(Term):
    location: Location

    def _boundary(self) -> tuple[ObjTy, ObjTy]:
        return UNIT, Val(self.location)

    def __str__(self) -> str:
        return f"lookup {self.location}"


@dataclass(frozen=True)
class Update(Term):
    location: Location

    def _boundary(self) -> tuple[ObjTy, ObjTy]:
        return Val(self.location), UNIT

    def __str__(self) -> str:
        return f"update {self.location}"


# --------------------------------------------------------------------------- smart constructors


def mk_id(sig: MemorySignature, obj: ObjTy) -> Term:
    return Id(check_type(obj, sig))


def mk_comp(g: Term, f: Term) -> Term:
    return Comp(g, f)


def mk_final(sig: MemorySignature, obj: ObjTy) -> Term:
    return Final(check_type(obj, sig))


def mk_pair(f: Term, g: Term) -> Term:
    return Pair(f, g)


def mk_pi1(sig: MemorySignature, left: ObjTy, right: ObjTy) -> Term:
    return Pi1(check_type(left, sig), check_type(right, sig))


def mk_pi2(sig: MemorySignature, left: ObjTy, right: ObjTy) -> Term:
    return Pi2(check_type(left, sig), check_type(right, sig))


def mk_lookup(sig: MemorySignature, location: Location) -> Term:
    return Lookup(sig.require(location))


def mk_update(sig: MemorySignature, location: Location) -> Term:
    return Update(sig.require(location))


def compose(*terms: Term) -> Term:
    """`compose(h, g, f)` is `h o (g o f)`, the right-nested reading of the surface syntax."""
    if not terms:
        raise ValueError("compose needs at least one term")
    result = terms[-1]
    for term in reversed(terms[:-1]):
        result = Comp(term, result)
    return result


# --------------------------------------------------------------------------- inspection


def subterms(term: Term) -> Iterator[Term]:
    yield term
    for child in term.children():
        yield from subterms(child)


def term_locations(term: Term) -> Iterator[Location]:
    for sub in subterms(term):
        if isinstance(sub, (Lookup, Update)):
            yield sub.location
        elif isinstance(sub, (Id, Final)):
            yield from type_locations(sub.obj)
        elif isinstance(sub, (Pi1, Pi2)):
            yield from type_locations(sub.left)
            yield from type_locations(sub.right)


def check_term(term: Term, sig: MemorySignature) -> Term:
    """Return `term` unchanged if every location it mentions is declared in `sig`."""
    for location in term_locations(term):
        if location not in sig:
            raise UnknownLocation(location)
    return term


def depth(term: Term) -> int:
    children = term.children()
    return 1 + max((depth(child) for child in children), default=0)


def recompute_boundary(term: Term) -> tuple[ObjTy, ObjTy]:
    """Re-derive (dom, cod) from the typing rules without trusting stored boundaries below."""
    match term:
        case Id(obj=obj):
            return obj, obj
        case Final(obj=obj):
            return obj, UNIT
        case Pi1(left=left, right=right):
            return Prod(left, right), left
        case Pi2(left=left, right=right):
            return Prod(left, right), right
        case Lookup(location=location):
            return UNIT, Val(location)
        case Update(location=location):
            return Val(location), UNIT
        case Comp(g=g, f=f):
            f_dom, f_cod = recompute_boundary(f)
            g_dom, g_cod = recompute_boundary(g)
            if f_cod != g_dom:
                raise TypeMismatch(f"Ill-typed composition {term}", expected=g_dom, actual=f_cod)
            return f_dom, g_cod
        case Pair(first=first, second=second):
            first_dom, first_cod = recompute_boundary(first)
            second_dom, second_cod = recompute_boundary(second)
            if first_dom != second_dom:
                raise TypeMismatch(f"Ill-typed pair {term}", expected=first_dom, actual=second_dom)
            return first_dom, Prod(first_cod, second_cod)
    raise TypeMismatch(f"Not a term: {term!r}")


def validate_term(term: Term) -> bool:
    """True iff the stored boundaries of every subterm agree with the recomputed ones."""
    return all(recompute_boundary(sub) == (sub.dom, sub.cod) for sub in subterms(term))
