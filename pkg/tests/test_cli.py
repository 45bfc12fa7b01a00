"""CLI runner: subcommands, exit codes, determinism, report artifacts."""
import filecmp
import json
from pathlib import Path

import pytest

from energyrep.cli import main
from energyrep.config import ConfigError, load_config

REPO = Path(__file__).resolve().parents[1]
CIRCLE_CFG = REPO / "configs" / "circle.cfg"
PUNCTURED_CFG = REPO / "configs" / "punctured.cfg"


def small_config(tmp_path, **overrides) -> Path:
    """A fast config for CLI round trips."""
    values = {
        "seed": 2024,
        "domain.shape": "circle",
        "domain.nodes": 32,
        "spectrum.circle_nodes": 32,
        "spectrum.oscillator_nodes": 240,
        "spectrum.oscillator_halfwidth": 6.0,
        "ladders.cutoff": 10,
        "ladders.samples": 50,
        "seminorms.nodes": "16 24",
        "seminorms.functions": 15,
        "gauge.pairs": 5,
        "regularity.functions": 5,
        "cutoff.nodes": 80,
        "fock.tuples": 10,
        "fock.pairs": 5,
        "conformal.torus_nodes": 8,
        "conformal.elements": 2,
    }
    values.update(overrides)
    path = tmp_path / "fast.cfg"
    path.write_text("".join(f"{k} = {v}\n" for k, v in values.items()))
    return path


class TestConfigParsing:
    def test_loads_shipped_config(self):
        cfg = load_config(CIRCLE_CFG)
        assert cfg.seed == 12345
        assert cfg.domain_shape == "circle"
        assert cfg.seminorms_nodes == (16, 32, 64)

    def test_missing_required_key(self, tmp_path):
        p = tmp_path / "bad.cfg"
        p.write_text("domain.shape = circle\n")
        with pytest.raises(ConfigError, match="seed"):
            load_config(p)

    def test_unknown_key_rejected(self, tmp_path):
        p = tmp_path / "bad.cfg"
        p.write_text("seed = 1\ndomain.shape = circle\nnot.a.key = 2\n")
        with pytest.raises(ConfigError, match="not.a.key"):
            load_config(p)

    def test_bad_value_rejected(self, tmp_path):
        p = tmp_path / "bad.cfg"
        p.write_text("seed = twelve\ndomain.shape = circle\n")
        with pytest.raises(ConfigError, match="seed"):
            load_config(p)

    def test_comments_and_blank_lines(self, tmp_path):
        p = tmp_path / "ok.cfg"
        p.write_text("# comment\n\nseed = 3  # trailing\ndomain.shape = circle\n")
        assert load_config(p).seed == 3

    def test_duplicate_key_rejected(self, tmp_path):
        p = tmp_path / "dup.cfg"
        p.write_text("seed = 1\nseed = 2\ndomain.shape = circle\n")
        with pytest.raises(ConfigError, match="duplicate"):
            load_config(p)


class TestExitCodes:
    def test_missing_config_file(self, tmp_path, capsys):
        code = main(["spectrum", "--config", str(tmp_path / "none.cfg")])
        assert code == 2
        assert "configuration error" in capsys.readouterr().err

    def test_config_error_before_computation(self, tmp_path, capsys):
        p = tmp_path / "bad.cfg"
        p.write_text("seed = 1\ndomain.shape = klein_bottle\n")
        code = main(["spectrum", "--config", str(p),
                     "--out", str(tmp_path / "out")])
        assert code == 2
        assert not (tmp_path / "out").exists()

    def test_unknown_subcommand_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate", "--config", "x"])
        assert exc.value.code == 2

    def test_passing_suite_returns_zero(self, tmp_path):
        cfg = small_config(tmp_path)
        assert main(["ladders", "--config", str(cfg),
                     "--out", str(tmp_path / "out")]) == 0
        assert (tmp_path / "out" / "ladders.json").exists()

    def test_condition_c_refusal_returns_one(self, tmp_path):
        code = main(["gauge", "--config", str(PUNCTURED_CFG),
                     "--out", str(tmp_path / "out")])
        assert code == 1
        data = json.loads((tmp_path / "out" / "gauge.json").read_text())
        verdicts = {c["name"]: c["verdict"] for c in data["checks"]}
        assert verdicts["suite_refused_condition_c"] == "refused"
        assert verdicts["punctured_gradient_growth"] == "pass"


class TestReports:
    def test_fock_suite_artifacts(self, tmp_path):
        cfg = small_config(tmp_path)
        out = tmp_path / "out"
        assert main(["fock", "--config", str(cfg), "--out", str(out)]) == 0
        data = json.loads((out / "fock.json").read_text())
        assert data["passed"] is True
        assert {"name", "inputs_digest", "measured", "tolerance", "comparator",
                "verdict", "detail"} <= set(data["checks"][0])
        assert "environment" in data and "python" in data["environment"]

    def test_spectrum_csv_tables(self, tmp_path):
        cfg = small_config(tmp_path)
        out = tmp_path / "out"
        assert main(["spectrum", "--config", str(cfg), "--out", str(out)]) == 0
        lines = (out / "spectrum_domain.csv").read_text().splitlines()
        assert lines[0] == "index,eigenvalue"
        assert len(lines) == 1 + 32

    def test_seed_override(self, tmp_path):
        cfg = small_config(tmp_path)
        out1, out2 = tmp_path / "o1", tmp_path / "o2"
        main(["ladders", "--config", str(cfg), "--out", str(out1)])
        main(["ladders", "--config", str(cfg), "--out", str(out2),
              "--seed", "999"])
        d1 = json.loads((out1 / "ladders.json").read_text())
        d2 = json.loads((out2 / "ladders.json").read_text())
        assert d1["seed"] == 2024 and d2["seed"] == 999

    def test_env_var_output_dir(self, tmp_path, monkeypatch):
        cfg = small_config(tmp_path)
        target = tmp_path / "env_out"
        monkeypatch.setenv("ENERGYREP_OUT", str(target))
        assert main(["ladders", "--config", str(cfg)]) == 0
        assert (target / "ladders.json").exists()

    def test_explicit_out_beats_env(self, tmp_path, monkeypatch):
        cfg = small_config(tmp_path)
        monkeypatch.setenv("ENERGYREP_OUT", str(tmp_path / "env_out"))
        explicit = tmp_path / "explicit"
        main(["ladders", "--config", str(cfg), "--out", str(explicit)])
        assert (explicit / "ladders.json").exists()
        assert not (tmp_path / "env_out").exists()


class TestDeterminism:
    def test_reports_byte_identical(self, tmp_path):
        cfg = small_config(tmp_path)
        out1, out2 = tmp_path / "r1", tmp_path / "r2"
        for out in (out1, out2):
            assert main(["all", "--config", str(cfg), "--out", str(out)]) == 0
        for name in ("spectrum", "ladders", "seminorms", "gauge", "fock",
                     "conformal"):
            assert filecmp.cmp(out1 / f"{name}.json", out2 / f"{name}.json",
                               shallow=False), f"{name}.json differs"
        for csv_file in out1.glob("*.csv"):
            assert filecmp.cmp(csv_file, out2 / csv_file.name, shallow=False)

    def test_all_equals_individual_runs(self, tmp_path):
        cfg = small_config(tmp_path)
        out_all, out_one = tmp_path / "all", tmp_path / "one"
        main(["all", "--config", str(cfg), "--out", str(out_all)])
        main(["gauge", "--config", str(cfg), "--out", str(out_one)])
        assert filecmp.cmp(out_all / "gauge.json", out_one / "gauge.json",
                           shallow=False)
