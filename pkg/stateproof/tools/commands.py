"""Command implementations behind the `stateproof` CLI; each returns a `Report`."""

import logging
import time
from collections.abc import Callable
from pathlib import Path

from stateproof.config import settings
from stateproof.io.scripts import load_script, script_paths
from stateproof.io.syntax import parse_equation, parse_term, print_term, print_type
from stateproof.io.utils import load_signature, read_source
from stateproof.logic.decorations import infer_kind
from stateproof.logic.errors import StateProofError
from stateproof.logic.kernel import Mode, Proof, RuleName
from stateproof.logic.memory import MemorySignature, Store
from stateproof.logic.semantics import Counterexample, check_semantic
from stateproof.proofs.corpus import check_script, labels_in
from stateproof.proofs.sweep import run_sweep
from stateproof.reports.models import (
    CounterexampleDetails,
    Details,
    ErrorDetails,
    KindDetails,
    ProofDetails,
    ReplayDetails,
    Report,
    RuleSweepOutcome,
    ScriptOutcome,
    Status,
    SweepDetails,
    ValidationDetails,
)

logger = logging.getLogger(__name__)

SignatureSource = str | Path | None


def _run(command: str, body: Callable[[], tuple[Status, Details]]) -> Report:
    start = time.perf_counter()
    try:
        status, details = body()
    except StateProofError as e:
        logger.error(f"❌ {command} failed: {e}")
        status, details = "error", ErrorDetails(error=type(e).__name__, message=str(e))
    elapsed_ms = (time.perf_counter() - start) * 1000
    return Report(command=command, status=status, details=details, elapsed_ms=round(elapsed_ms, 3))


def _rule_name(proof: Proof) -> str:
    return proof.rule.value if isinstance(proof.rule, RuleName) else str(proof.rule)


def _store(store: Store) -> dict[str, str]:
    return {str(location): str(value) for location, value in store.as_dict().items()}


def _counterexample(found: Counterexample) -> CounterexampleDetails:
    (lhs_value, lhs_store), (rhs_value, rhs_store) = found.lhs_out, found.rhs_out
    return CounterexampleDetails(
        input=str(found.input),
        store=_store(found.store),
        lhs_result=str(lhs_value),
        lhs_store=_store(lhs_store),
        rhs_result=str(rhs_value),
        rhs_store=_store(rhs_store),
    )


def cmd_check_kind(term_file: Path, signature: SignatureSource = None) -> Report:
    """Infer the least decoration of the term stored in `term_file`."""

    def body() -> tuple[Status, Details]:
        sig = load_signature(signature)
        term = parse_term(read_source(term_file).strip(), sig)
        kind = infer_kind(term)
        logger.info(f"✅ {term} is {kind}")
        details = KindDetails(
            term=print_term(term), dom=print_type(term.dom), cod=print_type(term.cod), inferred=str(kind)
        )
        return "ok", details

    return _run("check-kind", body)


def cmd_check_proof(script_file: Path, signature: SignatureSource = None) -> Report:
    """
    Replay the proof script in `script_file` through the kernel.

    The report fails when the kernel rejects a node or the proof does not conclude the goal;
    the failing path names the rejected node by its labels.
    """

    def body() -> tuple[Status, Details]:
        sig: MemorySignature | None = load_signature(signature) if signature is not None else None
        script = load_script(script_file, sig)
        verdict = check_script(script)
        conclusion = script.proof.conclusion
        details = ProofDetails(
            script=script.name,
            goal=str(script.goal),
            conclusion=str(conclusion) if conclusion is not None else None,
            top_rule=_rule_name(script.proof),
            labels=[label for label in labels_in(script.proof) if label in script.step_labels],
        )
        if verdict.rejection is not None:
            rejection = verdict.rejection
            logger.info(f"❌ {script.name}: {rejection}")
            details.failing_path = rejection.path_text
            details.reason = rejection.reason.value
            details.message = rejection.detail
            return "fail", details
        logger.info(f"✅ {script.name} checks")
        return "ok", details

    return _run("check-proof", body)


def cmd_validate(eq_file: Path, signature: SignatureSource = None) -> Report:
    """Decide the equation in `eq_file` by exhaustive enumeration over the signature."""

    def body() -> tuple[Status, Details]:
        sig = load_signature(signature)
        equation = parse_equation(read_source(eq_file), sig)
        result = check_semantic(equation, sig)
        details = ValidationDetails(
            equation=str(equation),
            mode="strong" if result.mode is Mode.STRONG else "weak",
            holds=result.holds,
            cases_checked=result.cases_checked,
            signature=str(sig),
            counterexample=_counterexample(result.counterexample) if result.counterexample is not None else None,
        )
        if result.holds:
            logger.info(f"✅ {equation} holds over {result.cases_checked} case(s)")
            return "ok", details
        logger.info(f"❌ {equation} is refuted: {result.counterexample}")
        return "fail", details

    return _run("validate", body)


def cmd_replay(target: Path, signature: SignatureSource = None) -> Report:
    """
    Replay one script or every `*.proof` file below a directory, comparing the kernel verdict
    and the semantic status of each goal with the script's `expect` block.
    """

    def body() -> tuple[Status, Details]:
        sig: MemorySignature | None = load_signature(signature) if signature is not None else None
        outcomes: list[ScriptOutcome] = []
        for path in script_paths(target):
            script = load_script(path, sig)
            verdict = check_script(script)
            semantics = check_semantic(script.goal, script.signature)
            rejection = verdict.rejection
            outcome = ScriptOutcome(
                script=script.name,
                source=str(path),
                kernel_accepts=verdict.ok,
                expected_kernel_accepts=script.expect.kernel_accepts,
                semantics_holds=semantics.holds,
                expected_semantics_holds=script.expect.semantics_holds,
                failing_path=rejection.path_text if rejection else None,
                reason=rejection.reason.value if rejection else None,
                message=rejection.detail if rejection else None,
            )
            marker = "✅" if outcome.as_expected else "❌"
            logger.info(f"{marker} {script.name}: kernel accepted={verdict.ok}, goal holds={semantics.holds}")
            outcomes.append(outcome)
        status: Status = "ok" if all(o.as_expected for o in outcomes) else "fail"
        return status, ReplayDetails(scripts=outcomes)

    return _run("replay", body)


def cmd_sweep(
    signature: SignatureSource = None,
    seed: int | None = None,
    samples: int | None = None,
    max_depth: int | None = None,
) -> Report:
    """Run the rule-soundness sweep; fails if any rule yields a semantically false conclusion."""

    def body() -> tuple[Status, Details]:
        sig = load_signature(signature)
        used_seed = settings.DEFAULT_SEED if seed is None else seed
        depth = settings.sweep_config.max_depth if max_depth is None else max_depth
        count = settings.sweep_config.samples_per_rule if samples is None else samples
        results = run_sweep(sig, used_seed, count, depth)
        details = SweepDetails(
            seed=used_seed,
            max_depth=depth,
            signature=str(sig),
            rules=[
                RuleSweepOutcome(
                    rule=r.rule,
                    samples=r.samples,
                    accepted=r.accepted,
                    exercised=r.exercised,
                    violations=r.violations,
                    first_violation=r.first_violation,
                )
                for r in results
            ],
        )
        status: Status = "ok" if all(r.violations == 0 for r in results) else "fail"
        return status, details

    return _run("sweep", body)


# --------------------------------------------------------------------------- rendering


def _text_lines(report: Report) -> list[str]:
    details = report.details
    lines = [f"{report.command}: {report.status} ({report.elapsed_ms:.1f} ms)"]
    match details:
        case KindDetails():
            lines.append(f"  {details.term} : {details.dom} -> {details.cod} is {details.inferred}")
        case ProofDetails():
            lines.append(f"  script: {details.script}")
            lines.append(f"  goal: {details.goal}")
            lines.append(f"  top rule: {details.top_rule}")
            if details.labels:
                lines.append(f"  steps: {', '.join(details.labels)}")
            if details.reason is not None:
                lines.append(f"  rejected at {details.failing_path}: {details.reason}: {details.message}")
        case ValidationDetails():
            verdict = "holds" if details.holds else "is refuted"
            lines.append(f"  {details.equation} {verdict} ({details.mode}, {details.cases_checked} case(s))")
            if details.counterexample is not None:
                ce = details.counterexample
                lines.append(f"  input {ce.input}, store {ce.store}")
                lines.append(f"    lhs: {ce.lhs_result} with {ce.lhs_store}")
                lines.append(f"    rhs: {ce.rhs_result} with {ce.rhs_store}")
        case ReplayDetails():
            for outcome in details.scripts:
                mark = "ok" if outcome.as_expected else "UNEXPECTED"
                kernel = (
                    "accepted" if outcome.kernel_accepts else f"rejected ({outcome.reason} at {outcome.failing_path})"
                )
                semantics = "holds" if outcome.semantics_holds else "refuted"
                lines.append(f"  [{mark}] {outcome.script}: {kernel}, goal {semantics}")
        case SweepDetails():
            lines.append(f"  seed {details.seed}, depth {details.max_depth}, {details.signature}")
            for rule in details.rules:
                lines.append(
                    f"  {rule.rule}: {rule.exercised} exercised / {rule.accepted} accepted / "
                    f"{rule.samples} drawn, {rule.violations} violation(s)"
                )
                if rule.first_violation:
                    lines.append(f"    first violation: {rule.first_violation}")
        case ErrorDetails():
            lines.append(f"  {details.error}: {details.message}")
    return lines


def render_report(report: Report, output_format: str | None = None) -> str:
    """Text for humans or schema-stable JSON for CI."""
    if (output_format or settings.OUTPUT_FORMAT) == "json":
        return report.model_dump_json(indent=settings.JSON_INDENT)
    return "\n".join(_text_lines(report))
