"""Decorations (kinds) of terms: pure < ro < rw."""

from enum import IntEnum

from .terms import Comp, Final, Id, Lookup, Pair, Pi1, Pi2, Term, Update


class Kind(IntEnum):
    PURE = 0
    RO = 1
    RW = 2

    def __str__(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, text: str) -> "Kind":
        aliases = {"pure": cls.PURE, "ro": cls.RO, "acc": cls.RO, "rw": cls.RW, "mod": cls.RW}
        try:
            return aliases[text.strip().lower()]
        except KeyError:
            raise ValueError(f"Unknown kind '{text}'. Must be one of: pure, ro, rw") from None


def join(*kinds: Kind) -> Kind:
    return max(kinds, default=Kind.PURE)


def infer_kind(term: Term) -> Kind:
    """Least kind `k` such that `term` is decorated `k`."""
    match term:
        case Id() | Final() | Pi1() | Pi2():
            return Kind.PURE
        case Lookup():
            return Kind.RO
        case Update():
            return Kind.RW
        case Comp(g=g, f=f):
            return join(infer_kind(g), infer_kind(f))
        case Pair(first=first, second=second):
            return join(infer_kind(first), infer_kind(second))
    raise TypeError(f"Not a term: {term!r}")


def has_kind(term: Term, kind: Kind) -> bool:
    return infer_kind(term) <= kind


def is_derivable(term: Term, kind: Kind) -> bool:
    """
    Decide the `is kind term` judgment by searching its constructors directly.

    One clause per constructor: leaves at their own kind, `is_comp` and `is_pair` at a
    common kind, and the two hierarchy constructors `is_pure_ro`, `is_ro_rw`. Used to
    cross-check `has_kind`.
    """
    leaf = (
        (isinstance(term, (Id, Final, Pi1, Pi2)) and kind == Kind.PURE)
        or (isinstance(term, Lookup) and kind == Kind.RO)
        or (isinstance(term, Update) and kind == Kind.RW)
    )
    if leaf:
        return True
    if isinstance(term, Comp) and is_derivable(term.g, kind) and is_derivable(term.f, kind):
        return True
    if isinstance(term, Pair) and is_derivable(term.first, kind) and is_derivable(term.second, kind):
        return True
    if kind == Kind.RO and is_derivable(term, Kind.PURE):
        return True
    if kind == Kind.RW and is_derivable(term, Kind.RO):
        return True
    return False
