import os
import subprocess
import sys
from pathlib import Path

import pytest

from tombnames.cli import DATA_DIR, ConfigError, load_scenario_config, main

SRC = str(Path(__file__).resolve().parent.parent / "src")


def run_main(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestFreqCommand:
    def test_text_output_has_all_rows(self, capsys):
        code, out, _ = run_main(capsys, "freq")
        assert code == 0
        assert out.count("jesus+joseph") >= 2
        assert "0.393" in out and "0.158" in out

    def test_delimited_is_byte_stable(self, capsys):
        _, first, _ = run_main(capsys, "freq", "--format", "delimited")
        _, second, _ = run_main(capsys, "freq", "--format", "delimited")
        assert first == second
        rows = [line for line in first.splitlines() if line.startswith("row|")]
        assert len(rows) == 7

    def test_delimited_carries_exact_rationals(self, capsys):
        _, out, _ = run_main(capsys, "freq", "--format", "delimited")
        first = out.splitlines()[0].split("|")
        # nu column: float then exact fraction
        assert first[5] == repr(282118 / 795353)
        assert first[6] == "282118/795353"


class TestBayesCommand:
    def test_three_scenarios_with_intermediates(self, capsys):
        code, out, _ = run_main(capsys, "bayes")
        assert code == 0
        for label in ("neutral", "neutral_renditions", "optimistic"):
            assert f"scenario {label}" in out
        assert "prior odds" in out and "1/1099" in out
        assert "posterior" in out

    def test_delimited_stable_and_parsable(self, capsys):
        _, first, _ = run_main(capsys, "bayes", "--format", "delimited")
        _, second, _ = run_main(capsys, "bayes", "--format", "delimited")
        assert first == second
        lines = [l for l in first.splitlines() if l.startswith("bayes|")]
        assert len(lines) == 3
        for line in lines:
            fields = line.split("|")
            float(fields[2])  # prior odds parses as float
            assert fields[3] == "1/1099"


class TestRRDemoCommand:
    def test_default_prints_both_exact_pvalues(self, capsys):
        code, out, _ = run_main(capsys, "rr-demo")
        assert code == 0
        assert "p-value = 2/3" in out
        assert "p-value = 1/9" in out

    def test_no_split_prints_only_broad(self, capsys):
        _, out, _ = run_main(capsys, "rr-demo", "--no-split")
        assert "p-value = 2/3" in out
        assert "1/9" not in out

    def test_custom_fractions(self, capsys):
        # equal halves tie at statistic 1/6, so both count: p = 1/3
        _, out, _ = run_main(capsys, "rr-demo", "--fractions", "1/2,1/2")
        assert "statistic = 1/6" in out
        assert "p-value = 1/3" in out

    def test_bad_fractions_config_error(self, capsys):
        code, _, err = run_main(capsys, "rr-demo", "--fractions", "1/2,1/3")
        assert code == 2
        assert "error" in err


class TestCheckCommand:
    def test_small_check_passes(self, capsys):
        code, out, _ = run_main(
            capsys, "check", "--target", "alt_likelihood", "--trials", "20000", "--seed", "5"
        )
        assert code == 0
        assert "overall: PASS" in out

    def test_corrupted_exact_fails_with_exit_1(self, capsys):
        code, out, _ = run_main(
            capsys,
            "check",
            "--target",
            "alt_likelihood",
            "--trials",
            "5000",
            "--seed",
            "5",
            "--perturb-exact",
            "0.05",
        )
        assert code == 1
        assert "FAIL" in out

    def test_check_reports_exact_estimate_se(self, capsys):
        _, out, _ = run_main(
            capsys, "check", "--target", "alt_likelihood", "--trials", "5000", "--seed", "5"
        )
        assert "exact" in out and "est" in out and "se" in out


class TestValidateCommand:
    def test_builtin_config_ok(self, capsys):
        code, out, _ = run_main(capsys, "validate")
        assert code == 0
        assert "OK" in out
        assert "freq rows: 7" in out

    def test_missing_config_exit_2(self, capsys):
        code, _, err = run_main(capsys, "validate", "--config", "/no/such/file.cfg")
        assert code == 2
        assert "error" in err

    def test_config_without_tasks_rejected(self, tmp_path, capsys):
        onom = tmp_path / "o.onom"
        onom.write_text("totals|10|10\n")
        cfg = tmp_path / "empty.cfg"
        cfg.write_text("[onomasticon]\npath = o.onom\n")
        code, _, err = run_main(capsys, "validate", "--config", str(cfg))
        assert code == 2
        assert "no task requested" in err

    def test_bad_freq_row_rejected(self, tmp_path, capsys):
        onom = tmp_path / "o.onom"
        onom.write_text("totals|10|10\n")
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("[onomasticon]\npath = o.onom\n[freq]\nrow = just_one_field\n")
        code, _, err = run_main(capsys, "validate", "--config", str(cfg))
        assert code == 2
        assert "bad freq row" in err

    def test_unknown_section_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "odd.cfg"
        cfg.write_text("[mystery]\nx = 1\n")
        code, _, err = run_main(capsys, "validate", "--config", str(cfg))
        assert code == 2
        assert "unknown section" in err


class TestConfigLoading:
    def test_builtin_config_parses(self):
        config = load_scenario_config(DATA_DIR / "talpiyot.cfg")
        assert set(config.target_sets) == {"big", "small"}
        assert set(config.weight_tables) == {"neutral", "optimistic"}
        assert config.check_trials == 1_000_000

    def test_missing_referenced_file(self, tmp_path):
        cfg = tmp_path / "c.cfg"
        cfg.write_text("[onomasticon]\npath = ghost.onom\n[freq]\nrow = a|equal|b|1\n")
        with pytest.raises(ConfigError, match="cannot read"):
            load_scenario_config(cfg)

    def test_onomasticon_parse_error_carries_context(self, tmp_path):
        (tmp_path / "o.onom").write_text("totals|10|10\nx|m|-1\n")
        cfg = tmp_path / "c.cfg"
        cfg.write_text("[onomasticon]\npath = o.onom\n[freq]\nrow = a|equal|b|1\n")
        with pytest.raises(ConfigError, match="line 2"):
            load_scenario_config(cfg)


def test_module_invocation_smoke():
    env = dict(os.environ, PYTHONPATH=SRC)
    proc = subprocess.run(
        [sys.executable, "-m", "tombnames", "rr-demo", "--format", "delimited"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert proc.returncode == 0
    assert "2/3" in proc.stdout and "1/9" in proc.stdout
