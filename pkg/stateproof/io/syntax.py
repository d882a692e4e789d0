"""
Surface syntax of types, terms, equations and signatures.

Grammar (composition and products associate to the right):

    type      := atom ('*' type)?          atom := 'unit' | 'V(' loc ')' | '(' type ')'
    term      := factor ('o' term)?
    factor    := id[X] | final[X] | inv_pi1[X] | pi1[X,Y] | pi2[X,Y] | permut[X,Y]
               | lookup loc | update loc | '(' term ')'
               | (pair|perm_pair|prod|perm_prod|left_seq|right_seq) '(' term ',' term ')'
    equation  := term ('==' | '~') term
    signature := 'locations' (loc ':' '{' value (',' value)* '}')*

Annotations in brackets may be dropped wherever the neighbouring terms fix them. Derived
forms are expanded while elaborating, so the result is always a core `Term`. Lines
starting with `#` are comments.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache

from arpeggio import EOF, NoMatch, Optional, ParserPython, PTNodeVisitor, visit_parse_tree
from arpeggio import RegExMatch as _

from ..logic import derived
from ..logic.errors import ParseError, TypeMismatch
from ..logic.kernel import Equation, Mode
from ..logic.memory import Location, MemorySignature, Value, declare_signature
from ..logic.terms import UNIT, Comp, Final, Id, Lookup, ObjTy, Pair, Pi1, Pi2, Prod, Term, Update, Val, check_term

logger = logging.getLogger(__name__)

# --------------------------------------------------------------------------- grammar


def comment():
    return _(r"#[^\n]*")


def ident():
    return _(r"(?!o\b)[A-Za-z_][A-Za-z0-9_']*|[0-9]+")


def value():
    return _(r"[A-Za-z0-9_]+")


def unit_ty():
    return _(r"unit\b")


def val_ty():
    return _(r"V\b"), "(", ident, ")"


def paren_ty():
    return "(", type_expr, ")"


def type_atom():
    return [unit_ty, val_ty, paren_ty]


def type_expr():
    return type_atom, Optional("*", type_expr)


def annot1():
    return "[", type_expr, "]"


def annot2():
    return "[", type_expr, ",", type_expr, "]"


def leaf1():
    return _(r"(id|final|inv_pi1)\b"), Optional(annot1)


def leaf2():
    return _(r"(pi1|pi2|permut)\b"), Optional(annot2)


def effect():
    return _(r"(lookup|update)\b"), ident


def binary():
    return _(r"(pair|perm_pair|prod|perm_prod|left_seq|right_seq)\b"), "(", term, ",", term, ")"


def paren_term():
    return "(", term, ")"


def factor():
    return [binary, leaf1, leaf2, effect, paren_term]


def comp_tail():
    return _(r"o\b"), term


def term():
    return factor, Optional(comp_tail)


def eq_op():
    return _(r"==|~")


def carrier_values():
    return value, Optional(",", carrier_values)


def loc_decl():
    return ident, ":", "{", Optional(carrier_values), "}"


def loc_decls():
    return loc_decl, Optional(loc_decls)


def type_file():
    return type_expr, EOF


def term_file():
    return term, EOF


def equation_file():
    return term, eq_op, term, EOF


def signature_file():
    return _(r"locations\b"), Optional(loc_decls), EOF


_ROOTS = {
    "type": type_file,
    "term": term_file,
    "equation": equation_file,
    "signature": signature_file,
}


@lru_cache(maxsize=None)
def _parser(root: str) -> ParserPython:
    return ParserPython(_ROOTS[root], comment)


# --------------------------------------------------------------------------- raw syntax tree

Span = tuple[int, int]


@dataclass(frozen=True)
class _Name:
    text: str

    @property
    def location(self) -> Location:
        return int(self.text) if self.text.isdigit() else self.text


@dataclass(frozen=True)
class _Annotation:
    types: tuple[ObjTy, ...]


@dataclass(frozen=True)
class _Raw:
    span: Span


@dataclass(frozen=True)
class _RawLeaf(_Raw):
    name: str
    annotation: tuple[ObjTy, ...] | None


@dataclass(frozen=True)
class _RawEffect(_Raw):
    name: str
    location: Location


@dataclass(frozen=True)
class _RawBinary(_Raw):
    name: str
    left: _Raw
    right: _Raw


@dataclass(frozen=True)
class _RawComp(_Raw):
    g: _Raw
    f: _Raw


@dataclass(frozen=True)
class _EqOp:
    mode: Mode


@dataclass(frozen=True)
class _Decl:
    location: Location
    values: tuple[Value, ...]


def _of(children, cls) -> list:
    return [c for c in children if isinstance(c, cls)]


def _span(node) -> Span:
    return node.position, node.position_end


class _SyntaxVisitor(PTNodeVisitor):
    def visit_ident(self, node, children):
        return _Name(node.value)

    def visit_value(self, node, children):
        text = node.value
        return int(text) if text.isdigit() else text

    def visit_unit_ty(self, node, children):
        return UNIT

    def visit_val_ty(self, node, children):
        return Val(_of(children, _Name)[0].location)

    def visit_paren_ty(self, node, children):
        return _of(children, ObjTy)[0]

    def visit_type_atom(self, node, children):
        return _of(children, ObjTy)[0]

    def visit_type_expr(self, node, children):
        types = _of(children, ObjTy)
        return types[0] if len(types) == 1 else Prod(types[0], types[1])

    def visit_annot1(self, node, children):
        return _Annotation(tuple(_of(children, ObjTy)))

    def visit_annot2(self, node, children):
        return _Annotation(tuple(_of(children, ObjTy)))

    def visit_leaf1(self, node, children):
        annotations = _of(children, _Annotation)
        return _RawLeaf(_span(node), node[0].value, annotations[0].types if annotations else None)

    visit_leaf2 = visit_leaf1

    def visit_effect(self, node, children):
        return _RawEffect(_span(node), node[0].value, _of(children, _Name)[0].location)

    def visit_binary(self, node, children):
        left, right = _of(children, _Raw)
        return _RawBinary(_span(node), node[0].value, left, right)

    def visit_paren_term(self, node, children):
        return _of(children, _Raw)[0]

    def visit_factor(self, node, children):
        return _of(children, _Raw)[0]

    def visit_comp_tail(self, node, children):
        return _of(children, _Raw)[0]

    def visit_term(self, node, children):
        raws = _of(children, _Raw)
        if len(raws) == 1:
            return raws[0]
        return _RawComp(_span(node), raws[0], raws[1])

    def visit_eq_op(self, node, children):
        return _EqOp(Mode.STRONG if node.value == "==" else Mode.WEAK)

    def visit_carrier_values(self, node, children):
        values: list = []
        for child in children:
            if isinstance(child, tuple):
                values.extend(child)
            elif child != ",":
                values.append(child)
        return tuple(values)

    def visit_loc_decl(self, node, children):
        values = [c for c in children if isinstance(c, tuple)]
        return _Decl(_of(children, _Name)[0].location, values[0] if values else ())

    def visit_loc_decls(self, node, children):
        decls: list[_Decl] = []
        for child in children:
            if isinstance(child, _Decl):
                decls.append(child)
            elif isinstance(child, list):
                decls.extend(child)
        return decls

    def visit_type_file(self, node, children):
        return _of(children, ObjTy)[0]

    def visit_term_file(self, node, children):
        return _of(children, _Raw)[0]

    def visit_equation_file(self, node, children):
        return [c for c in children if isinstance(c, (_Raw, _EqOp))]

    visit_signature_file = visit_loc_decls


def _line_col(text: str, position: int) -> tuple[int, int]:
    before = text[:position]
    return before.count("\n") + 1, position - (before.rfind("\n") + 1) + 1


def _parse_tree(root: str, text: str):
    try:
        tree = _parser(root).parse(text)
    except NoMatch as e:
        line, column = getattr(e, "line", None), getattr(e, "col", None)
        raise ParseError(f"Invalid {root}: {e}", position=e.position, line=line, column=column) from None
    return visit_parse_tree(tree, _SyntaxVisitor())


# --------------------------------------------------------------------------- elaboration


class _NeedsAnnotation(Exception):
    def __init__(self, raw: _Raw):
        super().__init__(raw)
        self.raw = raw


def _split(obj: ObjTy | None, span: Span, what: str) -> tuple[ObjTy | None, ObjTy | None]:
    if obj is None:
        return None, None
    if not isinstance(obj, Prod):
        raise TypeMismatch(f"{what} must be a product type, got {obj}", actual=obj, span=span)
    return obj.left, obj.right


def _product(left: ObjTy | None, right: ObjTy | None) -> ObjTy | None:
    return Prod(left, right) if left is not None and right is not None else None


def _known_dom(raw: _Raw) -> ObjTy | None:
    match raw:
        case _RawLeaf(name=name, annotation=(obj,)):
            return obj
        case _RawLeaf(name=name, annotation=(left, right)):
            return Prod(left, right)
        case _RawEffect(name="lookup"):
            return UNIT
        case _RawEffect(location=location):
            return Val(location)
        case _RawComp(f=f):
            return _known_dom(f)
        case _RawBinary(name="pair" | "perm_pair", left=left, right=right):
            return _known_dom(left) or _known_dom(right)
        case _RawBinary(left=left, right=right):
            return _product(_known_dom(left), _known_dom(right))
    return None


def _known_cod(raw: _Raw) -> ObjTy | None:
    match raw:
        case _RawLeaf(name="final"):
            return UNIT
        case _RawLeaf(name="id", annotation=(obj,)):
            return obj
        case _RawLeaf(name="inv_pi1", annotation=(obj,)):
            return Prod(obj, UNIT)
        case _RawLeaf(name="pi1", annotation=(left, _)):
            return left
        case _RawLeaf(name="pi2", annotation=(_, right)):
            return right
        case _RawLeaf(name="permut", annotation=(left, right)):
            return Prod(right, left)
        case _RawEffect(name="lookup", location=location):
            return Val(location)
        case _RawEffect():
            return UNIT
        case _RawComp(g=g):
            return _known_cod(g)
        case _RawBinary(left=left, right=right):
            return _product(_known_cod(left), _known_cod(right))
    return None


def _fit(term: Term, dom: ObjTy | None, cod: ObjTy | None, span: Span) -> Term:
    if dom is not None and term.dom != dom:
        raise TypeMismatch(f"{term} starts from {term.dom}, expected {dom}", expected=dom, actual=term.dom, span=span)
    if cod is not None and term.cod != cod:
        raise TypeMismatch(f"{term} ends in {term.cod}, expected {cod}", expected=cod, actual=term.cod, span=span)
    return term


def _leaf(raw: _RawLeaf, dom: ObjTy | None, cod: ObjTy | None) -> Term:
    name, annotation = raw.name, raw.annotation
    if name == "id":
        obj = annotation[0] if annotation else dom or cod
        return Id(obj) if obj is not None else _missing(raw)
    if name == "final":
        obj = annotation[0] if annotation else dom
        return Final(obj) if obj is not None else _missing(raw)
    if name == "inv_pi1":
        obj = annotation[0] if annotation else dom or (cod.left if isinstance(cod, Prod) else None)
        return derived.inv_pi1(obj) if obj is not None else _missing(raw)

    if annotation:
        left, right = annotation
    elif dom is not None:
        left, right = _split(dom, raw.span, f"The domain of {name}")
    elif name == "permut" and isinstance(cod, Prod):
        left, right = cod.right, cod.left
    else:
        return _missing(raw)
    assert left is not None and right is not None
    if name == "pi1":
        return Pi1(left, right)
    if name == "pi2":
        return Pi2(left, right)
    return derived.permut(left, right)


def _missing(raw: _RawLeaf) -> Term:
    raise _NeedsAnnotation(raw)


_PRODUCTS = {
    "prod": derived.prod,
    "perm_prod": derived.perm_prod,
    "left_seq": derived.left_seq,
    "right_seq": derived.right_seq,
}


def _elab(raw: _Raw, dom: ObjTy | None, cod: ObjTy | None) -> Term:
    try:
        match raw:
            case _RawLeaf():
                term = _leaf(raw, dom, cod)
            case _RawEffect(name="lookup", location=location):
                term = Lookup(location)
            case _RawEffect(location=location):
                term = Update(location)
            case _RawComp(g=g_raw, f=f_raw):
                try:
                    f = _elab(f_raw, dom, None)
                except _NeedsAnnotation:
                    g = _elab(g_raw, _known_cod(f_raw), cod)
                    f = _elab(f_raw, dom, g.dom)
                else:
                    g = _elab(g_raw, f.cod, cod)
                term = Comp(g, f)
            case _RawBinary(name="pair" | "perm_pair", left=left_raw, right=right_raw):
                cod_left, cod_right = _split(cod, raw.span, f"The codomain of {raw.name}")
                try:
                    left = _elab(left_raw, dom, cod_left)
                except _NeedsAnnotation:
                    right = _elab(right_raw, dom, cod_right)
                    left = _elab(left_raw, right.dom, cod_left)
                else:
                    right = _elab(right_raw, left.dom, cod_right)
                term = Pair(left, right) if raw.name == "pair" else derived.perm_pair(left, right)
            case _RawBinary(name=name, left=left_raw, right=right_raw):
                dom_left, dom_right = _split(dom, raw.span, f"The domain of {name}")
                cod_left, cod_right = _split(cod, raw.span, f"The codomain of {name}")
                term = _PRODUCTS[name](_elab(left_raw, dom_left, cod_left), _elab(right_raw, dom_right, cod_right))
            case _:
                raise TypeError(f"Unexpected syntax node {raw!r}")
    except TypeMismatch as e:
        raise e.with_span(raw.span)
    return _fit(term, dom, cod, raw.span)


def _elaborate(text: str, action):
    try:
        return action()
    except _NeedsAnnotation as e:
        raw = e.raw
        name = raw.name if isinstance(raw, _RawLeaf) else "term"
        line, column = _line_col(text, raw.span[0])
        raise ParseError(
            f"Cannot infer the type annotation of '{name}'; write it explicitly",
            position=raw.span[0],
            line=line,
            column=column,
        ) from None


# --------------------------------------------------------------------------- public API


def parse_type(text: str) -> ObjTy:
    return _parse_tree("type", text)


def parse_term(
    text: str, sig: MemorySignature | None = None, dom: ObjTy | None = None, cod: ObjTy | None = None
) -> Term:
    """
    Parse and elaborate a term, optionally against expected boundary types.

    Raises:
        ParseError: On a syntax error or an annotation that cannot be inferred
        TypeMismatch: On an ill-typed term, with the span of the offending fragment
        UnknownLocation: If `sig` is given and the term mentions an undeclared location
    """
    raw = _parse_tree("term", text)
    term = _elaborate(text, lambda: _elab(raw, dom, cod))
    return check_term(term, sig) if sig is not None else term


def parse_equation(text: str, sig: MemorySignature | None = None) -> Equation:
    """Parse `lhs == rhs` or `lhs ~ rhs`; each side may fix the other's annotations."""
    results = _parse_tree("equation", text)
    lhs_raw, rhs_raw = _of(results, _Raw)
    mode = _of(results, _EqOp)[0].mode

    def build() -> Equation:
        try:
            lhs = _elab(lhs_raw, None, None)
        except _NeedsAnnotation:
            rhs = _elab(rhs_raw, None, None)
            lhs = _elab(lhs_raw, rhs.dom, rhs.cod)
        else:
            rhs = _elab(rhs_raw, lhs.dom, lhs.cod)
        return Equation(lhs, rhs, mode)

    equation = _elaborate(text, build)
    if sig is not None:
        check_term(equation.lhs, sig)
        check_term(equation.rhs, sig)
    return equation


def parse_signature(text: str) -> MemorySignature:
    """
    Parse `locations i:{0,1} j:{a,b}`.

    Raises:
        ParseError: On a syntax error
        DuplicateLocation, EmptyCarrier: As raised by `declare_signature`
    """
    decls: list[_Decl] = _parse_tree("signature", text)
    locations = [d.location for d in decls]
    carriers: dict[Location, tuple[Value, ...]] = {}
    for decl in decls:
        carriers.setdefault(decl.location, decl.values)
    return declare_signature(locations, carriers)


def print_type(obj: ObjTy) -> str:
    return str(obj)


def print_term(term: Term) -> str:
    """Fully annotated core syntax; `parse_term(print_term(t)) == t`."""
    return str(term)


def print_equation(equation: Equation) -> str:
    return str(equation)
