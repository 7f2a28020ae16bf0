"""Tests for the command table and the wdesk entry point."""

import json
import sys
from pathlib import Path

import pytest

import wdesk
from configs.commands import COMMANDS, MissingArgument, UnknownCommand, run_command
from configs.common import TeeLogger
from configs.loader import load_desk_config
from shared.budget import BudgetExceeded
from shared.workspace import Workspace, parse_workspace

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
WORKSPACE = str(FIXTURES / "workspace.json")


@pytest.fixture(scope="module")
def ws():
    return parse_workspace(WORKSPACE)


def run(ws, command, **flags):
    return run_command(ws, command, flags)


# ---------------------------------------------------------------------------
# W-types and quotients
# ---------------------------------------------------------------------------


class TestTreeCommands:
    def test_aczel_headline(self):
        report = run(Workspace(), "aczel", sig="arity012", max_stage=3)
        assert report.ok
        assert report.headline == "13 trees, 4 classes"
        assert report.data["hf_oracle"] == 4
        assert report.exit_code == 0

    def test_aczel_at_stage_four(self):
        report = run(Workspace(), "aczel", sig="arity012", max_stage=4)
        assert report.headline == "183 trees, 11 classes"

    def test_w_stages(self, ws):
        report = run(ws, "w-stages", sig="arity012", max_stage=3)
        assert report.data["sizes"] == [0, 1, 3, 13]
        assert report.data["stabilized_at"] is None

    def test_w_stages_of_finite_signature_stabilizes(self):
        report = run(Workspace(), "w-stages", sig="arity00", max_stage=3)
        assert report.data["sizes"] == [0, 2, 2, 2]
        assert report.data["stabilized_at"] == 1

    def test_w_fold_into_parity(self, ws):
        report = run(ws, "w-fold", algebra="parity", max_stage=3)
        assert report.ok
        assert report.data["value_counts"] == {"even": 2, "odd": 1}
        assert report.data["values"]["succ[pred:zero[]]"] == "odd"

    def test_psh_w_running_example(self, ws):
        report = run(ws, "psh-w", map="f", max_stage=3)
        assert [s["C0"] for s in report.data["sizes"]] == [0, 1, 2, 3]
        assert [s["C1"] for s in report.data["sizes"]] == [0, 0, 1, 2]

    def test_dep_w_parity(self, ws):
        report = run(ws, "dep-w", dep_sig="parity", max_stage=3)
        assert report.ok
        assert report.data["sizes"][-1] == {"even": 2, "odd": 1}

    def test_quotient_by_proof_relevant_bisimilarity(self):
        report = run(Workspace(), "quotient", sig="arity012", max_stage=3)
        assert report.ok
        assert report.headline == "*: 13 elements, 4 classes"

    def test_quotient_needs_a_relation(self, ws):
        with pytest.raises(MissingArgument):
            run(ws, "quotient")


# ---------------------------------------------------------------------------
# M-types
# ---------------------------------------------------------------------------


class TestCoalgebraCommands:
    def test_truncation(self, ws):
        report = run(ws, "m-trunc", coalgebra="streams", state="x", depth=2)
        assert report.headline == "tr_2(x) = succ[pred:succ[pred:#]]"

    def test_bisimilar_states(self, ws):
        report = run(ws, "m-bisim", coalgebra="streams", state="x", other_state="y")
        assert report.ok

    def test_distinct_states_give_separating_depth(self, ws):
        report = run(ws, "m-bisim", coalgebra="streams", state="x", other_state="w")
        assert not report.ok
        assert report.exit_code == 1
        assert report.counterexample["depth"] == 1

    def test_minimize(self, ws):
        report = run(ws, "m-minimize", coalgebra="streams")
        assert report.headline == "4 states, 2 classes"
        assert report.data["classes"] == [["w"], ["x", "y", "z"]]

    def test_unknown_state(self, ws):
        with pytest.raises(ValueError, match="not a state"):
            run(ws, "m-trunc", coalgebra="streams", state="q")


# ---------------------------------------------------------------------------
# Simplicial sets
# ---------------------------------------------------------------------------


class TestSimplicialCommands:
    def test_identity_is_a_kan_fibration(self, ws):
        report = run(ws, "kan-check", map="id_Delta0", dim=2)
        assert report.ok
        assert report.counterexample is None

    def test_collapse_fails_at_outer_horn(self, ws):
        report = run(ws, "kan-check", map="collapse", dim=2)
        assert not report.ok
        assert report.counterexample["horn"] == {"n": 2, "k": 0}

    def test_lift_has_no_reversal(self, ws):
        report = run(ws, "lift", i="horn_incl", p="collapse", top="horn_top", bottom="horn_bottom")
        assert not report.ok
        assert set(report.counterexample["square"]) == {"i", "p", "top", "bottom"}

    def test_pi_adjunction(self, ws):
        report = run(ws, "pi", map="f", over="id_B", along="id_A")
        assert report.ok
        adj = report.data["adjunction"]
        assert adj["maps_into_product"] == adj["maps_from_pullback"]


# ---------------------------------------------------------------------------
# Reedy structures
# ---------------------------------------------------------------------------


class TestReedyCommands:
    def test_simplex_conditions_hold(self, ws):
        assert run(ws, "reedy-validate", reedy="simplex2").ok

    def test_arrow_lowering_degree_has_no_section(self, ws):
        report = run(ws, "reedy-validate", reedy="arrow_down")
        assert not report.ok
        assert report.counterexample["no_section"] == "u"

    def test_interval_over_point(self, ws):
        report = run(ws, "reedy-check", reedy="simplex2", map="interval_to_point",
                     side="fibration")
        assert not report.ok
        assert report.counterexample["subject"] == "[1]"

    def test_every_square_certifies(self, ws):
        report = run(ws, "abs-pushout", reedy="simplex2")
        assert report.ok
        assert report.data["certificates"]

    def test_incompatible_sections(self, ws):
        square = ["2>1:001", "2>1:011", "1>0:00", "1>0:00", "1>2:02", "0>1:0"]
        report = run(ws, "abs-pushout", reedy="simplex2", square=square)
        assert not report.ok
        assert report.counterexample["failure"] == "SectionIncompatible"

    def test_fixed_point_outside_image(self, ws):
        report = run(ws, "gset-cofib", map="first_point", object="2")
        assert not report.ok
        assert report.data["order"] == 2
        assert report.counterexample["witness"] == ["2>2:11", "2>2:10"]

    def test_identity_is_free(self, ws):
        assert run(ws, "gset-cofib", map="id_y2", object="2").ok


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


class TestRunCommand:
    def test_every_command_has_a_handler(self):
        assert len(COMMANDS) == 16

    def test_unknown_command(self, ws):
        with pytest.raises(UnknownCommand):
            run(ws, "frobnicate")

    def test_missing_argument(self, ws):
        with pytest.raises(MissingArgument, match="--sig"):
            run(ws, "aczel")

    def test_budget_exhaustion(self):
        with pytest.raises(BudgetExceeded):
            run(Workspace(), "aczel", sig="arity012", max_stage=4, budget=20)

    def test_args_are_echoed(self, ws):
        report = run(ws, "m-trunc", coalgebra="streams", state="x")
        assert report.args == {"coalgebra": "streams", "state": "x"}
        assert report.data["depth"] == 3


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


class TestMain:
    def test_aczel_text_report(self, capsys):
        assert wdesk.main(["aczel", "--sig", "arity012", "--max-stage", "3"]) == 0
        assert "13 trees, 4 classes" in capsys.readouterr().out

    def test_json_is_byte_identical(self, capsys):
        argv = ["kan-check", "-w", WORKSPACE, "--map", "collapse", "--dim", "2",
                "--format", "json"]
        assert wdesk.main(argv) == 1
        first = capsys.readouterr().out
        assert wdesk.main(argv) == 1
        assert capsys.readouterr().out == first
        data = json.loads(first)
        assert data["verdict"] == "negative"
        assert data["counterexample"]["horn"] == {"n": 2, "k": 0}

    def test_kan_check_identity(self, capsys):
        argv = ["kan-check", "-w", WORKSPACE, "--map", "id_Delta0", "--dim", "2"]
        assert wdesk.main(argv) == 0

    def test_lift_exits_one_with_square(self, capsys):
        argv = ["lift", "-w", WORKSPACE, "--i", "horn_incl", "--p", "collapse",
                "--top", "horn_top", "--bottom", "horn_bottom", "--format", "json"]
        assert wdesk.main(argv) == 1
        data = json.loads(capsys.readouterr().out)
        assert data["counterexample"]["square"]["top"]["[1]"]["(0,2)"] == [0, 0]

    def test_missing_argument_exits_two(self):
        with pytest.raises(SystemExit) as info:
            wdesk.main(["aczel"])
        assert info.value.code == 2

    def test_unknown_command_exits_two(self):
        with pytest.raises(SystemExit) as info:
            wdesk.main(["frobnicate"])
        assert info.value.code == 2

    def test_budget_exhaustion_exits_two(self, capsys):
        argv = ["aczel", "--sig", "arity012", "--max-stage", "4", "--budget", "20"]
        assert wdesk.main(argv) == 2
        assert "Budget exceeded" in capsys.readouterr().err

    def test_env_budget(self, capsys, monkeypatch):
        monkeypatch.setenv("WDESK_BUDGET", "20")
        assert wdesk.main(["aczel", "--sig", "arity012", "--max-stage", "4"]) == 2

    def test_validation_failure_exits_two(self, tmp_path, capsys):
        path = tmp_path / "ws.json"
        path.write_text(json.dumps({"maps": {"f": {"source": "X", "target": "Y"}}}))
        assert wdesk.main(["kan-check", "-w", str(path), "--map", "f"]) == 2
        assert "maps.f" in capsys.readouterr().err

    def test_config_file(self, tmp_path, capsys):
        cfg = tmp_path / "desk.yaml"
        cfg.write_text("max_stage: 2\nformat: json\n")
        assert wdesk.main(["w-stages", "--sig", "arity012", "-c", str(cfg)]) == 0
        assert json.loads(capsys.readouterr().out)["data"]["sizes"] == [0, 1, 3]

    def test_flags_override_config(self, tmp_path, capsys):
        cfg = tmp_path / "desk.yaml"
        cfg.write_text("max_stage: 2\nformat: json\n")
        argv = ["w-stages", "--sig", "arity012", "-c", str(cfg), "--max-stage", "1"]
        assert wdesk.main(argv) == 0
        assert json.loads(capsys.readouterr().out)["data"]["sizes"] == [0, 1]

    def test_missing_config_file(self, tmp_path):
        with pytest.raises(SystemExit) as info:
            wdesk.main(["aczel", "--sig", "arity012", "-c", str(tmp_path / "none.yaml")])
        assert info.value.code == 2

    def test_log_file(self, tmp_path, monkeypatch):
        monkeypatch.setattr(sys, "stdout", sys.stdout)
        monkeypatch.setattr(sys, "stderr", sys.stderr)
        log = tmp_path / "run.log"
        assert wdesk.main(["aczel", "--sig", "arity012", "--log-file", str(log)]) == 0
        assert not isinstance(sys.stdout, TeeLogger)
        assert not isinstance(sys.stderr, TeeLogger)
        assert "13 trees, 4 classes" in log.read_text()

    def test_log_file_closed_after_error(self, tmp_path, monkeypatch):
        monkeypatch.setattr(sys, "stdout", sys.stdout)
        monkeypatch.setattr(sys, "stderr", sys.stderr)
        log = tmp_path / "run.log"
        argv = ["aczel", "--sig", "arity012", "--max-stage", "4", "--budget", "20",
                "--log-file", str(log)]
        assert wdesk.main(argv) == 2
        assert not isinstance(sys.stderr, TeeLogger)
        assert "Budget exceeded" in log.read_text()


class TestTeeLogger:
    def test_writes_both_until_closed(self, tmp_path, capsys):
        log = tmp_path / "tee.log"
        with TeeLogger(log, stream=sys.stdout) as tee:
            tee.write("first\n")
        assert tee.log.closed
        tee.write("second\n")
        tee.flush()
        assert log.read_text() == "first\n"
        assert capsys.readouterr().out == "first\nsecond\n"

    def test_close_is_idempotent(self, tmp_path):
        tee = TeeLogger(tmp_path / "tee.log", stream=sys.stdout)
        tee.close()
        tee.close()
        assert tee.log.closed


class TestConfigLoader:
    def test_defaults(self):
        cfg = load_desk_config(Path(wdesk.__file__).parent / "configs" / "wdesk.default.yaml")
        assert (cfg.truncation, cfg.max_stage, cfg.dim, cfg.max_workers) == (3, 3, 2, 1)
        assert cfg.limits.proof_cap == 4

    def test_unknown_key(self, tmp_path):
        cfg = tmp_path / "desk.yaml"
        cfg.write_text("stages: 2\n")
        with pytest.raises(ValueError, match="Unknown config keys"):
            load_desk_config(cfg)

    def test_invalid_value(self, tmp_path):
        cfg = tmp_path / "desk.yaml"
        cfg.write_text("dim: 0\n")
        with pytest.raises(ValueError, match="dim"):
            load_desk_config(cfg)
