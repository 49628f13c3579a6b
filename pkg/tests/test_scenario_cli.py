import json
from pathlib import Path

import pytest

from config import AppConfig, EnsembleConfig, NumericsConfig, OutputConfig
from filter_dynamics import CollapseAnnihilatedError, PositivityViolationError
from scenario_cli import (
    ArtifactIOError,
    InvariantBreachError,
    ScenarioConfig,
    ScenarioError,
    ScenarioService,
    ScenarioValidationError,
    VerificationReport,
)
from scenario_cli import scenarios, suites
from scenario_cli.main import EXIT_INVARIANT_FAILURE, EXIT_IO, EXIT_PASS, EXIT_VALIDATION, build_parser, load_config, main
from scenario_cli.outputs import format_value, render_csv, render_verification

GOLDEN = Path(__file__).parent / "golden" / "ito_tables.txt"


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ("QSIM_SEED", "QSIM_WORKERS", "QSIM_BATCH_SIZE", "QSIM_OUTPUT_DIR", "QSIM_OUTPUT_FORMAT", "QSIM_HBAR"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def service(tmp_path):
    return ScenarioService(AppConfig(NumericsConfig(), EnsembleConfig(), OutputConfig(output_dir=str(tmp_path))))


def parse(*argv):
    return load_config(build_parser().parse_args(list(argv)))


class TestConfigLoading:

    def test_positional_scenario(self):
        cfg = parse("run", "cat", "--seed", "7")
        assert cfg.scenario == "cat"
        assert cfg.seed == 7

    def test_flags_override_config_file(self, tmp_path):
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps({"scenario": "dephasing-diffusive", "seed": 1, "trajectories": 50, "params": {"gamma": 2.0}}))
        cfg = parse("run", "--config", str(path), "--seed", "9", "--param", "amp0=0.6", "--amp1", "0.8")
        assert cfg.seed == 9
        assert cfg.trajectories == 50
        assert cfg.params == {"gamma": 2.0, "amp0": 0.6, "amp1": 0.8}

    def test_param_values_are_parsed_as_json(self):
        cfg = parse("run", "central-limit", "--param", "nus=[1000, 100]", "--param", "label=plain")
        assert cfg.params == {"nus": [1000, 100], "label": "plain"}

    def test_conflicting_scenarios(self):
        with pytest.raises(ScenarioValidationError):
            parse("run", "cat", "--scenario", "ito-tables")

    def test_missing_scenario(self):
        with pytest.raises(ScenarioValidationError):
            parse("run")

    def test_malformed_param(self):
        with pytest.raises(ScenarioValidationError):
            parse("run", "cat", "--param", "amp0")

    def test_unknown_scenario(self):
        with pytest.raises(ScenarioValidationError):
            parse("run", "schrodinger")

    def test_config_file_must_hold_an_object(self, tmp_path):
        path = tmp_path / "scenario.json"
        path.write_text("[1, 2]")
        with pytest.raises(ScenarioValidationError):
            parse("run", "--config", str(path))


class TestService:

    def test_amplitudes_are_normalized(self, service):
        settings, params = service.resolve(ScenarioConfig(scenario="cat", params={"amp0": 3.0, "amp1": 4.0}))
        assert params.amp0 == pytest.approx(0.6)
        assert params.amp1 == pytest.approx(0.8)
        assert settings.seed == 20240607

    def test_zero_amplitudes(self, service):
        with pytest.raises(ScenarioValidationError):
            service.resolve(ScenarioConfig(scenario="cat", params={"amp0": 0.0, "amp1": 0.0}))

    def test_scenario_defaults(self, service):
        settings, _ = service.resolve(ScenarioConfig(scenario="dephasing-counting", params={"nu": 20.0}))
        assert settings.t_end == pytest.approx(0.5)
        assert settings.trajectories == 10000

    def test_step_beyond_horizon(self, service):
        with pytest.raises(ScenarioValidationError):
            service.resolve(ScenarioConfig(scenario="appendix-figure", dt=10.0))

    def test_unknown_parameter(self, service):
        with pytest.raises(ScenarioValidationError):
            service.resolve(ScenarioConfig(scenario="ito-tables", params={"gamma": 1.0}))

    def test_position_tracking_averages_enough_paths(self, service):
        settings, params = service.resolve(ScenarioConfig(scenario="position-collapse"))
        assert params.pairs == 50
        assert settings.trajectories >= 100

    def test_invalid_intensities(self, service):
        with pytest.raises(ScenarioValidationError):
            service.resolve(ScenarioConfig(scenario="central-limit", params={"nus": [100.0, 100.0]}))

    def test_cat_run(self, service, tmp_path):
        result = service.run(ScenarioConfig(scenario="cat"))
        assert result.summary["S"] == "1.0 bit"
        assert result.summary["pointer_probabilities"] == [0.5, 0.5]
        lines = (tmp_path / "cat.csv").read_text().splitlines()
        assert lines[0] == "row,column,re,im"
        assert len(lines) == 17
        manifest = json.loads((tmp_path / "cat.run.manifest.json").read_text())
        assert manifest["command"] == "run"
        assert manifest["artifacts"] == ["cat.csv"]
        assert "numpy" in manifest["versions"]

    def test_reruns_are_byte_identical(self, service, tmp_path):
        service.run(ScenarioConfig(scenario="appendix-figure", t_end=1.0))
        first = (tmp_path / "appendix-figure.csv").read_bytes()
        service.run(ScenarioConfig(scenario="appendix-figure", t_end=1.0))
        assert (tmp_path / "appendix-figure.csv").read_bytes() == first

    def test_verify_writes_report(self, service, tmp_path):
        report = service.verify(ScenarioConfig(scenario="ito-tables"))
        assert report.passed
        assert (tmp_path / "ito-tables.verify.txt").read_text().startswith("verify ito-tables: PASS\n")
        assert (tmp_path / "ito-tables.verify.manifest.json").exists()


class TestCommandLine:

    def test_run_cat_prints_entropy(self, tmp_path, capsys):
        assert main(["run", "cat", "--output", str(tmp_path)]) == EXIT_PASS
        assert "S = 1.0 bit" in capsys.readouterr().out

    def test_ito_tables_text_artifact(self, tmp_path):
        assert main(["run", "ito-tables", "--output", str(tmp_path)]) == EXIT_PASS
        assert (tmp_path / "ito-tables.txt").read_text(encoding="utf-8") == GOLDEN.read_text(encoding="utf-8")
        assert len((tmp_path / "ito-tables.csv").read_text().splitlines()) == 37

    def test_appendix_rows_as_jsonl(self, tmp_path):
        assert main(["run", "appendix-figure", "--output", str(tmp_path), "--format", "jsonl"]) == EXIT_PASS
        rows = [json.loads(line) for line in (tmp_path / "appendix-figure.jsonl").read_text().splitlines()]
        assert len(rows) == 6001
        assert list(rows[0]) == ["t", "q_numeric", "q_closed", "y", "z"]
        assert rows[0]["q_closed"] == 0.0
        assert rows[0]["y"] == -1.0

    @pytest.mark.parametrize("scenario", ["ito-tables", "cat", "appendix-figure"])
    def test_verify_passes(self, scenario, tmp_path, capsys):
        assert main(["verify", scenario, "--output", str(tmp_path)]) == EXIT_PASS
        assert capsys.readouterr().out.startswith(f"verify {scenario}: PASS")

    def test_failed_invariant_exit_code(self, tmp_path, monkeypatch):
        def failing(settings, params, hbar, tol):
            report = VerificationReport("ito-tables")
            report.check("always broken", 1.0, 0.0)
            return report

        monkeypatch.setitem(suites.SUITES, "ito-tables", failing)
        assert main(["verify", "ito-tables", "--output", str(tmp_path)]) == EXIT_INVARIANT_FAILURE

    @pytest.mark.parametrize("error", [PositivityViolationError, CollapseAnnihilatedError])
    def test_runtime_breach_exit_code(self, error, tmp_path, monkeypatch):
        def breaking(settings, params, hbar, tol):
            raise error("state left the positive cone")

        monkeypatch.setitem(scenarios.RUNNERS, "cat", breaking)
        monkeypatch.setitem(suites.SUITES, "cat", breaking)
        assert main(["run", "cat", "--output", str(tmp_path)]) == EXIT_INVARIANT_FAILURE
        assert main(["verify", "cat", "--output", str(tmp_path)]) == EXIT_INVARIANT_FAILURE

    @pytest.mark.parametrize("argv", [
        ["run", "schrodinger"],
        ["run", "cat", "--param", "colour=1"],
        ["run", "cat", "--amp0", "0", "--amp1", "0"],
        ["run", "appendix-figure", "--dt", "10"],
        ["verify", "dephasing-diffusive", "--trajectories", "0"],
    ])
    def test_validation_exit_code(self, argv, tmp_path):
        assert main(argv + ["--output", str(tmp_path)]) == EXIT_VALIDATION

    def test_bad_environment_exit_code(self, tmp_path, monkeypatch):
        monkeypatch.setenv("QSIM_WORKERS", "0")
        assert main(["run", "cat", "--output", str(tmp_path)]) == EXIT_VALIDATION

    def test_unwritable_output_exit_code(self, tmp_path):
        blocker = tmp_path / "blocker"
        blocker.write_text("not a directory")
        assert main(["run", "cat", "--output", str(blocker / "runs")]) == EXIT_IO

    def test_missing_config_file_exit_code(self, tmp_path):
        assert main(["run", "--config", str(tmp_path / "absent.json")]) == EXIT_IO


class TestRendering:

    def test_floats_use_shortest_repr(self):
        assert format_value(0.1) == "0.1"
        assert format_value(3) == "3"
        assert render_csv(["a", "b"], [(1, 0.25)]) == "a,b\n1,0.25\n"

    def test_csv_quotes_embedded_commas(self):
        assert render_csv(["label", "p"], [("up, down", 0.5)]) == "label,p\n\"up, down\",0.5\n"

    def test_failed_check_is_marked(self):
        report = VerificationReport("cat")
        report.check("defect", 2.0, 1.0)
        report.check("slack", 2.0, 1.0, ">=")
        text = render_verification(report)
        assert text.splitlines() == [
            "verify cat: FAIL",
            "  [FAIL] defect: 2 <= 1",
            "  [ok] slack: 2 >= 1",
        ]

    def test_io_errors_share_the_scenario_base(self):
        assert issubclass(ArtifactIOError, ScenarioError)
        assert not issubclass(ArtifactIOError, ScenarioValidationError)

    def test_breach_is_not_a_validation_error(self, service, monkeypatch):
        def breaking(settings, params, hbar, tol):
            raise PositivityViolationError("negative eigenvalue")

        monkeypatch.setitem(scenarios.RUNNERS, "cat", breaking)
        with pytest.raises(InvariantBreachError):
            service.run(ScenarioConfig(scenario="cat"))
