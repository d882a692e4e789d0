"""
Rule-soundness sweep.

For every kernel rule, draw seeded random instantiations, let the kernel build the
conclusion, and whenever all premises hold in the finite-store model check that the
conclusion holds too. A sound kernel reports zero violations.
"""

import logging
import random
from collections.abc import Callable, Iterable

from ..logic.errors import NoInhabitant
from ..logic.kernel import Arg, Equation, KernelError, RuleName, instantiate, strong, weak
from ..logic.memory import MemorySignature
from ..logic.semantics import check_semantic
from ..logic.terms import UNIT, Comp, Final, Lookup, Pi1, Pi2, Prod, Term
from .generators import RandomTermGenerator
from .models import RuleSweepResult

logger = logging.getLogger(__name__)

Instance = tuple[list[Equation], list[Arg]]
Sampler = Callable[[RandomTermGenerator], Instance]


def _parallel(gen: RandomTermGenerator) -> tuple[Term, Term]:
    f = gen.term(gen.obj(), gen.obj(), max_kind=gen.kind())
    return f, gen.neighbour(f, gen.kind())


def _strong_premise(gen: RandomTermGenerator) -> Equation:
    return strong(*_parallel(gen))


def _weak_premise(gen: RandomTermGenerator) -> Equation:
    return weak(*_parallel(gen))


def _refl(gen: RandomTermGenerator) -> Instance:
    return [], [gen.term(gen.obj(), gen.obj())]


def _sym(mode_premise: Callable[[RandomTermGenerator], Equation]) -> Sampler:
    def sample(gen: RandomTermGenerator) -> Instance:
        return [mode_premise(gen)], []

    return sample


def _trans(make: Callable[[Term, Term], Equation]) -> Sampler:
    def sample(gen: RandomTermGenerator) -> Instance:
        f = gen.term(gen.obj(), gen.obj())
        g = gen.neighbour(f, gen.kind())
        h = gen.neighbour(g, gen.kind())
        return [make(f, g), make(g, h)], []

    return sample


def _assoc(gen: RandomTermGenerator) -> Instance:
    x, y, z, w = (gen.obj() for _ in range(4))
    return [], [gen.term(z, w), gen.term(y, z), gen.term(x, y)]


def _subs(make: Callable[[Term, Term], Equation]) -> Sampler:
    def sample(gen: RandomTermGenerator) -> Instance:
        f1, f2 = _parallel(gen)
        return [make(f1, f2)], [gen.term(gen.obj(), f1.dom, max_kind=gen.kind())]

    return sample


def _repl(make: Callable[[Term, Term], Equation]) -> Sampler:
    def sample(gen: RandomTermGenerator) -> Instance:
        f1, f2 = _parallel(gen)
        return [make(f1, f2)], [gen.term(f1.cod, gen.obj(), max_kind=gen.kind())]

    return sample


def _weak_final_unique(gen: RandomTermGenerator) -> Instance:
    dom = gen.obj()
    return [], [gen.term(dom, UNIT, max_kind=gen.kind()), gen.term(dom, UNIT, max_kind=gen.kind())]


def _comp_final_unique(gen: RandomTermGenerator) -> Instance:
    f, g = _parallel(gen)
    final = Final(f.cod)
    return [strong(Comp(final, f), Comp(final, g)), weak(f, g)], []


def _pair_projection(gen: RandomTermGenerator) -> Instance:
    dom = gen.obj()
    return [], [gen.term(dom, gen.obj(), max_kind=gen.kind()), gen.term(dom, gen.obj(), max_kind=gen.kind())]


def _weak_pair_unicity(gen: RandomTermGenerator) -> Instance:
    dom, left, right = gen.obj(), gen.obj(), gen.obj()
    f = gen.term(dom, Prod(left, right), max_kind=gen.kind())
    g = gen.neighbour(f, gen.kind())
    pi1, pi2 = Pi1(left, right), Pi2(left, right)
    return [weak(Comp(pi1, f), Comp(pi1, g)), weak(Comp(pi2, f), Comp(pi2, g))], []


def _axiom1(gen: RandomTermGenerator) -> Instance:
    return [], [gen.location()]


def _axiom2(gen: RandomTermGenerator) -> Instance:
    return [], [gen.location(), gen.location()]


def _local_to_global(gen: RandomTermGenerator) -> Instance:
    dom = gen.obj()
    f = gen.term(dom, UNIT, max_kind=gen.kind())
    g = gen.neighbour(f, gen.kind())
    return [weak(Comp(Lookup(i), f), Comp(Lookup(i), g)) for i in gen.sig.locations], []


SAMPLERS: dict[RuleName, Sampler] = {
    RuleName.STRONG_REFL: _refl,
    RuleName.STRONG_SYM: _sym(_strong_premise),
    RuleName.STRONG_TRANS: _trans(strong),
    RuleName.ASSOC: _assoc,
    RuleName.ID_SRC: _refl,
    RuleName.ID_TGT: _refl,
    RuleName.STRONG_SUBS: _subs(strong),
    RuleName.STRONG_REPL: _repl(strong),
    RuleName.RO_WEAK_TO_STRONG: _sym(_weak_premise),
    RuleName.STRONG_TO_WEAK: _sym(_strong_premise),
    RuleName.WEAK_SYM: _sym(_weak_premise),
    RuleName.WEAK_TRANS: _trans(weak),
    RuleName.WEAK_SUBS: _subs(weak),
    RuleName.PURE_WEAK_REPL: _repl(weak),
    RuleName.WEAK_FINAL_UNIQUE: _weak_final_unique,
    RuleName.COMP_FINAL_UNIQUE: _comp_final_unique,
    RuleName.WEAK_PROJ_PI1: _pair_projection,
    RuleName.STRONG_PROJ_PI2: _pair_projection,
    RuleName.WEAK_PAIR_UNICITY: _weak_pair_unicity,
    RuleName.AXIOM1: _axiom1,
    RuleName.AXIOM2: _axiom2,
    RuleName.LOCAL_TO_GLOBAL: _local_to_global,
}


def rule_rng(seed: int, rule: RuleName) -> random.Random:
    """Per-rule stream, so one rule's results do not depend on which other rules ran."""
    return random.Random(f"{seed}:{rule.value}")


def sweep_rule(rule: RuleName, sig: MemorySignature, samples: int, seed: int, max_depth: int = 4) -> RuleSweepResult:
    gen = RandomTermGenerator(sig, rule_rng(seed, rule), max_depth)
    sampler = SAMPLERS[rule]
    accepted = exercised = violations = 0
    first_violation: str | None = None

    for _ in range(samples):
        try:
            premises, args = sampler(gen)
        except NoInhabitant:
            continue
        try:
            conclusion = instantiate(rule, premises, args, sig)
        except KernelError as e:
            logger.debug(f"{rule.value} rejected a sample: {e}")
            continue
        accepted += 1
        if not all(check_semantic(p, sig).holds for p in premises):
            continue
        exercised += 1
        result = check_semantic(conclusion, sig)
        if not result.holds:
            violations += 1
            if first_violation is None:
                first_violation = f"{conclusion} ({result.counterexample})"

    outcome = RuleSweepResult(rule.value, samples, accepted, exercised, violations, first_violation)
    if violations:
        logger.warning(f"❌ {rule.value}: {violations} violation(s) in {exercised} exercised sample(s)")
    else:
        logger.info(f"✅ {rule.value}: {exercised} exercised, {accepted} accepted of {samples}")
    return outcome


def run_sweep(
    sig: MemorySignature,
    seed: int,
    samples: int,
    max_depth: int = 4,
    rules: Iterable[RuleName] | None = None,
) -> list[RuleSweepResult]:
    """
    Sweep every rule in `rules` (all kernel rules by default) with `samples` draws each.

    Args:
        sig: Signature terms are drawn over and premises are checked against
        seed: Base seed; the same seed reproduces the same draws
        samples: Random instantiations per rule
        max_depth: Depth budget of the random term generator
        rules: Rules to sweep
    """
    selected = list(RuleName) if rules is None else list(rules)
    logger.info(f"🚀 Sweeping {len(selected)} rule(s), {samples} sample(s) each, seed {seed}")
    return [sweep_rule(rule, sig, samples, seed, max_depth) for rule in selected]
