import json
import shutil
from pathlib import Path
from unittest.mock import patch

from stateproof.proofs.corpus import COMMUTATION_STEPS
from stateproof.proofs.models import RuleSweepResult
from stateproof.reports.models import (
    ErrorDetails,
    KindDetails,
    ProofDetails,
    ReplayDetails,
    Report,
    SweepDetails,
    ValidationDetails,
)
from stateproof.tools import commands


class TestCheckKind:
    def test_infers_decoration(self, write_file) -> None:
        report = commands.cmd_check_kind(write_file("term.txt", "lookup j o update i\n"))
        assert report.status == "ok"
        assert isinstance(report.details, KindDetails)
        assert report.details.inferred == "rw"
        assert (report.details.dom, report.details.cod) == ("V(i)", "V(j)")

    def test_annotation_inference(self, write_file) -> None:
        report = commands.cmd_check_kind(write_file("term.txt", "pi1 o pair(id[V(i)], final)"))
        assert isinstance(report.details, KindDetails)
        assert report.details.term == "pi1[V(i),unit] o pair(id[V(i)], final[V(i)])"
        assert report.details.inferred == "pure"

    def test_parse_error_is_an_error_report(self, write_file) -> None:
        report = commands.cmd_check_kind(write_file("term.txt", "lookup"))
        assert report.status == "error"
        assert report.exit_code == 2
        assert isinstance(report.details, ErrorDetails)
        assert report.details.error == "ParseError"

    def test_undeclared_location(self, write_file) -> None:
        report = commands.cmd_check_kind(write_file("term.txt", "lookup k"))
        assert isinstance(report.details, ErrorDetails)
        assert report.details.error == "UnknownLocation"


class TestCheckProof:
    def test_commutation(self, commutation_script_path: Path) -> None:
        report = commands.cmd_check_proof(commutation_script_path)
        assert report.status == "ok"
        assert report.exit_code == 0
        assert isinstance(report.details, ProofDetails)
        assert report.details.top_rule == "CompFinalUnique"
        assert report.details.labels == list(COMMUTATION_STEPS)
        assert report.details.reason is None

    def test_signature_override(self, commutation_script_path: Path, corpus_dir: Path) -> None:
        report = commands.cmd_check_proof(commutation_script_path, corpus_dir / "signatures" / "three_values.sig")
        assert report.status == "ok"

    def test_forged_claim(self, corpus_dir: Path) -> None:
        report = commands.cmd_check_proof(corpus_dir / "negative" / "strong_axiom1_claim.proof")
        assert report.status == "fail"
        assert report.exit_code == 1
        assert isinstance(report.details, ProofDetails)
        assert report.details.reason == "SchemaMismatch"
        assert report.details.failing_path == "forged"

    def test_rejected_inner_step(self, corpus_dir: Path) -> None:
        report = commands.cmd_check_proof(corpus_dir / "negative" / "pure_weak_repl_modifier.proof")
        assert isinstance(report.details, ProofDetails)
        assert report.details.reason == "SideConditionViolated"
        assert report.details.failing_path == "repl"

    def test_refused_derived_lemma_fails(self, corpus_dir: Path) -> None:
        report = commands.cmd_check_proof(corpus_dir / "negative" / "E_1_4_modifier.proof")
        assert report.status == "fail"
        assert report.exit_code == 1
        assert isinstance(report.details, ProofDetails)
        assert report.details.reason == "SideConditionViolated"
        assert report.details.failing_path == "e14"

    def test_malformed_script(self, write_file) -> None:
        report = commands.cmd_check_proof(write_file("bad.proof", "name: bad\n"))
        assert report.status == "error"
        assert isinstance(report.details, ErrorDetails)
        assert report.details.error == "ScriptError"


class TestValidate:
    def test_counterexample(self, corpus_dir: Path) -> None:
        report = commands.cmd_validate(corpus_dir / "equations" / "strong_axiom1.eq")
        assert report.status == "fail"
        details = report.details
        assert isinstance(details, ValidationDetails)
        assert details.mode == "strong"
        assert details.cases_checked == 3
        assert details.counterexample is not None
        assert details.counterexample.input == "0"
        assert details.counterexample.store == {"i": "1", "j": "0"}
        assert details.counterexample.lhs_store == {"i": "0", "j": "0"}

    def test_holds(self, corpus_dir: Path) -> None:
        report = commands.cmd_validate(corpus_dir / "equations" / "weak_axiom1.eq")
        assert report.status == "ok"
        assert isinstance(report.details, ValidationDetails)
        assert report.details.mode == "weak"
        assert report.details.counterexample is None

    def test_signature_override(self, corpus_dir: Path) -> None:
        report = commands.cmd_validate(
            corpus_dir / "equations" / "sequential_products.eq", corpus_dir / "signatures" / "three_values.sig"
        )
        assert report.status == "ok"
        assert isinstance(report.details, ValidationDetails)
        assert report.details.cases_checked == 3 * 9
        assert report.details.signature == "locations i:{0,1,2} j:{0,1,2}"

    def test_sequential_products_agree(self, corpus_dir: Path) -> None:
        report = commands.cmd_validate(corpus_dir / "equations" / "sequential_products.eq")
        assert report.status == "ok"

    def test_commutation_on_both_signatures(self, corpus_dir: Path) -> None:
        equation = corpus_dir / "equations" / "commutation.eq"
        assert commands.cmd_validate(equation).status == "ok"
        report = commands.cmd_validate(equation, corpus_dir / "signatures" / "three_values.sig")
        assert report.status == "ok"
        assert isinstance(report.details, ValidationDetails)
        assert report.details.cases_checked == 3 * 9

    def test_same_location_sequences_differ(self, corpus_dir: Path) -> None:
        report = commands.cmd_validate(corpus_dir / "equations" / "sequential_products_same_location.eq")
        assert report.status == "fail"


class TestReplay:
    def test_corpus(self, corpus_dir: Path) -> None:
        report = commands.cmd_replay(corpus_dir)
        assert report.status == "ok"
        assert isinstance(report.details, ReplayDetails)
        outcomes = {o.script: o for o in report.details.scripts}
        assert outcomes["commutation_update_lookup"].kernel_accepts
        assert not outcomes["strong_axiom1_claim"].kernel_accepts
        assert not outcomes["strong_axiom1_claim"].semantics_holds
        assert all(o.as_expected for o in outcomes.values())

    def test_unexpected_verdict_fails(self, tmp_path: Path, corpus_dir: Path) -> None:
        text = (corpus_dir / "axioms" / "axiom1_i.proof").read_text(encoding="utf-8")
        (tmp_path / "wrong.proof").write_text(text.rstrip() + "\nexpect:\n  kernel: reject\n", encoding="utf-8")
        report = commands.cmd_replay(tmp_path)
        assert report.status == "fail"
        assert isinstance(report.details, ReplayDetails)
        assert not report.details.scripts[0].as_expected

    def test_single_file(self, tmp_path: Path, corpus_dir: Path) -> None:
        target = tmp_path / "one.proof"
        shutil.copy(corpus_dir / "inv_pi1_iso.proof", target)
        report = commands.cmd_replay(target)
        assert isinstance(report.details, ReplayDetails)
        assert [o.script for o in report.details.scripts] == ["inv_pi1_iso"]

    def test_missing_target(self, tmp_path: Path) -> None:
        report = commands.cmd_replay(tmp_path / "missing")
        assert report.status == "error"


class TestSweep:
    def test_small_sweep(self) -> None:
        report = commands.cmd_sweep(seed=3, samples=5, max_depth=3)
        assert report.status == "ok"
        assert isinstance(report.details, SweepDetails)
        assert report.details.seed == 3
        assert len(report.details.rules) == 22

    def test_violation_fails(self) -> None:
        found = [RuleSweepResult("Axiom1", 5, 5, 5, 1, "lookup i o update i == id[V(i)]")]
        with patch.object(commands, "run_sweep", return_value=found):
            report = commands.cmd_sweep(seed=3, samples=5)
        assert report.status == "fail"
        assert isinstance(report.details, SweepDetails)
        assert report.details.rules[0].first_violation is not None


class TestRenderReport:
    def test_json_round_trip(self, corpus_dir: Path) -> None:
        report = commands.cmd_validate(corpus_dir / "equations" / "strong_axiom1.eq")
        text = commands.render_report(report, "json")
        assert json.loads(text)["details"]["kind"] == "validation"
        assert Report.model_validate_json(text) == report

    def test_text(self, corpus_dir: Path) -> None:
        report = commands.cmd_validate(corpus_dir / "equations" / "strong_axiom1.eq")
        text = commands.render_report(report, "text")
        assert text.startswith("validate: fail")
        assert "is refuted" in text

    def test_replay_text(self, corpus_dir: Path) -> None:
        text = commands.render_report(commands.cmd_replay(corpus_dir / "negative"), "text")
        assert "[ok] axiom2_same_location: rejected (LocationClash at clash)" in text
