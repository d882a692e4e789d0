"""
Term generators for property tests and the rule-soundness sweep.

`RandomTermGenerator` draws type-directed random terms from a seeded `random.Random`;
`enumerate_terms` lists every small term over a fixed pool of object types.
"""

import functools
import itertools
import logging
import random
from collections.abc import Callable, Iterable, Sequence

from ..logic.decorations import Kind, infer_kind
from ..logic.errors import NoInhabitant
from ..logic.memory import Location, MemorySignature
from ..logic.terms import (
    UNIT,
    Comp,
    Final,
    Id,
    Lookup,
    ObjTy,
    Pair,
    Pi1,
    Pi2,
    Prod,
    Term,
    Update,
    Val,
    depth as term_depth,
)

logger = logging.getLogger(__name__)


@functools.cache
def min_depth(dom: ObjTy, cod: ObjTy, max_kind: Kind = Kind.RW) -> int | None:
    """Depth of the shallowest term `dom -> cod` decorated at most `max_kind`, None when there is none."""
    found: list[int] = []
    if dom == cod or cod == UNIT:
        found.append(1)
    if isinstance(cod, Val) and max_kind >= Kind.RO:
        found.append(1 if dom == UNIT else 2)
    if isinstance(dom, Prod):
        for part in (dom.left, dom.right):
            if part == cod:
                found.append(1)
            inner = min_depth(part, cod, max_kind)
            if inner is not None:
                found.append(inner + 1)
    if isinstance(cod, Prod):
        first, second = min_depth(dom, cod.left, max_kind), min_depth(dom, cod.right, max_kind)
        if first is not None and second is not None:
            found.append(1 + max(first, second))
    return min(found, default=None)


def inhabited(dom: ObjTy, cod: ObjTy, max_kind: Kind = Kind.RW) -> bool:
    """True iff some term `dom -> cod` is decorated at most `max_kind`."""
    return min_depth(dom, cod, max_kind) is not None


def _after(term: Term, first: Term) -> Term:
    return first if isinstance(term, Id) else Comp(term, first)


class RandomTermGenerator:
    """Seeded, type-directed random terms over one signature."""

    def __init__(self, sig: MemorySignature, rng: random.Random, max_depth: int = 4):
        self.sig = sig
        self.rng = rng
        self.max_depth = max_depth

    def location(self) -> Location:
        return self.rng.choice(self.sig.locations)

    def obj(self, depth: int = 1) -> ObjTy:
        """A random object type with at most `depth` nested products."""
        roll = self.rng.random()
        if depth > 0 and roll < 0.3:
            return Prod(self.obj(depth - 1), self.obj(depth - 1))
        if roll < 0.45:
            return UNIT
        return Val(self.location())

    def term(self, dom: ObjTy, cod: ObjTy, depth: int | None = None, max_kind: Kind = Kind.RW) -> Term:
        """
        A random term `dom -> cod` decorated at most `max_kind`.

        The result is at most `depth` deep (`max_depth` by default) unless even the shallowest
        term with this boundary is deeper, in which case a shallowest one is returned.

        Raises:
            NoInhabitant: If `max_kind` is pure and no pure term has this boundary
        """
        depth = self.max_depth if depth is None else depth
        shallowest = min_depth(dom, cod, max_kind)
        if shallowest is None:
            raise NoInhabitant(f"No {max_kind} term {dom} -> {cod}")
        if depth <= shallowest or self.rng.random() < 0.3:
            return self._leaf(dom, cod, max_kind, max(depth, shallowest))
        if isinstance(cod, Prod) and self.rng.random() < 0.4:
            parts = (min_depth(dom, cod.left, max_kind), min_depth(dom, cod.right, max_kind))
            if all(part is not None and part < depth for part in parts):
                return Pair(
                    self.term(dom, cod.left, depth - 1, max_kind),
                    self.term(dom, cod.right, depth - 1, max_kind),
                )
        middle = self._middle(dom, cod, max_kind, depth - 1)
        return Comp(self.term(middle, cod, depth - 1, max_kind), self.term(dom, middle, depth - 1, max_kind))

    def neighbour(self, term: Term, max_kind: Kind | None = None) -> Term:
        """A random term parallel to `term`: often a trivially equal variant, sometimes a fresh draw."""
        bound = infer_kind(term) if max_kind is None else max_kind
        roll = self.rng.random()
        if roll < 0.5 and term_depth(term) < self.max_depth:
            return Comp(Id(term.cod), term) if roll < 0.25 else Comp(term, Id(term.dom))
        if roll < 0.6:
            return term
        return self.term(term.dom, term.cod, max_kind=bound)

    def kind(self) -> Kind:
        return self.rng.choice(list(Kind))

    def _middle(self, dom: ObjTy, cod: ObjTy, max_kind: Kind, budget: int) -> ObjTy:
        def fits(first: ObjTy, second: ObjTy) -> bool:
            found = min_depth(first, second, max_kind)
            return found is not None and found <= budget

        candidates = [dom, cod, self.obj()]
        return self.rng.choice([m for m in candidates if fits(dom, m) and fits(m, cod)])

    def _projection(self, part: ObjTy, projection: Term, cod: ObjTy, max_kind: Kind, budget: int) -> Term:
        return _after(self._leaf(part, cod, max_kind, budget - 1), projection)

    def _leaf(self, dom: ObjTy, cod: ObjTy, max_kind: Kind, budget: int) -> Term:
        # (depth of the shallowest result, builder)
        options: list[tuple[int, Callable[[], Term]]] = []
        if dom == cod:
            options.append((1, lambda: Id(dom)))
        if cod == UNIT:
            options.append((1, lambda: Final(dom)))
            if max_kind >= Kind.RW and isinstance(dom, Val):
                update = Update(dom.location)
                options.append((1, lambda: update))
        if isinstance(cod, Val) and max_kind >= Kind.RO:
            lookup = Lookup(cod.location)
            options.append((1, lambda: lookup) if dom == UNIT else (2, lambda: Comp(lookup, Final(dom))))
        if isinstance(dom, Prod):
            left, right = dom.left, dom.right
            for part, projection in ((left, Pi1(left, right)), (right, Pi2(left, right))):
                if part == cod:
                    options.append((1, lambda projection=projection: projection))
                inner = min_depth(part, cod, max_kind)
                if inner is not None:
                    options.append(
                        (
                            inner + 1,
                            lambda part=part, projection=projection: self._projection(
                                part, projection, cod, max_kind, budget
                            ),
                        )
                    )
        if isinstance(cod, Prod):
            first, second = cod.left, cod.right
            parts = (min_depth(dom, first, max_kind), min_depth(dom, second, max_kind))
            if parts[0] is not None and parts[1] is not None:
                options.append(
                    (
                        1 + max(parts[0], parts[1]),
                        lambda: Pair(
                            self._leaf(dom, first, max_kind, budget - 1),
                            self._leaf(dom, second, max_kind, budget - 1),
                        ),
                    )
                )
        if not options:
            raise NoInhabitant(f"No {max_kind} term {dom} -> {cod}")
        fitting = [build for cost, build in options if cost <= budget]
        if not fitting:
            cheapest = min(cost for cost, _ in options)
            fitting = [build for cost, build in options if cost == cheapest]
        return self.rng.choice(fitting)()


def leaves(sig: MemorySignature, types: Sequence[ObjTy]) -> list[Term]:
    """Every constructor leaf over `types` and the locations of `sig`."""
    found: list[Term] = []
    for obj in types:
        found += [Id(obj), Final(obj)]
    for left, right in itertools.product(types, repeat=2):
        found += [Pi1(left, right), Pi2(left, right)]
    for location in sig.locations:
        found += [Lookup(location), Update(location)]
    return found


def enumerate_terms(sig: MemorySignature, types: Iterable[ObjTy], depth: int) -> list[Term]:
    """
    Every term of depth at most `depth` built from `leaves(sig, types)` with composition and
    pairing, deduplicated. Pairs are only formed when their codomain is again in the pool.

    Args:
        sig: Signature supplying the locations of `lookup` and `update`
        types: Pool of object types the leaves are annotated with
        depth: Maximum term depth (a leaf has depth 1)
    """
    pool = list(dict.fromkeys(types))
    allowed = set(pool)
    known: dict[Term, None] = dict.fromkeys(leaves(sig, pool))
    frontier = set(known)
    for _ in range(depth - 1):
        current = list(known)
        fresh: list[Term] = []
        for g, f in itertools.product(current, repeat=2):
            if g not in frontier and f not in frontier:
                continue
            candidates: list[Term] = []
            if f.cod == g.dom:
                candidates.append(Comp(g, f))
            if f.dom == g.dom and Prod(f.cod, g.cod) in allowed:
                candidates.append(Pair(f, g))
            for candidate in candidates:
                if candidate not in known:
                    known[candidate] = None
                    fresh.append(candidate)
        logger.debug(f"enumerate_terms: {len(fresh)} new term(s) at this depth")
        frontier = set(fresh)
    return list(known)
