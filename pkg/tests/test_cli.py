"""CLI tests: exit codes, config merging, outputs, round trips."""

import json
import xml.etree.ElementTree as ET

import pytest

from optopt import read_raw_csv
from optopt.cli import (
    BadArgsError,
    build_parser,
    load_config,
    main,
    spec_from_options,
    spec_to_config,
)


def run_main(argv):
    return main(argv)


class TestExitCodes:
    def test_missing_benchmark_is_usage_error(self, capsys):
        assert run_main(["run", "--out", "/tmp/x"]) == 2
        err = capsys.readouterr().err
        assert "usage:" in err
        assert "benchmark" in err

    def test_unknown_benchmark_rejected_by_parser(self, capsys):
        with pytest.raises(SystemExit) as exc:
            build_parser().parse_args(["run", "--benchmark", "styblinski"])
        assert exc.value.code == 2
        assert run_main(["run", "--benchmark", "styblinski"]) == 2

    def test_unknown_suite(self):
        assert run_main(["verify", "--suite", "nope"]) == 2

    def test_missing_subcommand(self):
        assert run_main([]) == 2

    def test_unwritable_out_is_runtime_error(self, tmp_path, capsys):
        blocker = tmp_path / "blocker"
        blocker.write_text("not a directory")
        code = run_main(
            ["run", "--benchmark", "branin", "--algos", "soo", "--repeats", "1",
             "--budget", "3", "--out", str(blocker / "sub")]
        )
        assert code == 1
        assert "optopt:" in capsys.readouterr().err


class TestRun:
    def test_writes_expected_files(self, tmp_path, capsys):
        out = tmp_path / "exp"
        code = run_main(
            ["run", "--benchmark", "branin", "--algos", "soo,bamsoo",
             "--repeats", "2", "--budget", "8", "--seed", "1",
             "--out", str(out), "--plot"]
        )
        assert code == 0
        for name in ("raw.csv", "summary.csv", "timing.txt", "regret.svg"):
            assert (out / name).exists(), name
        stdout = capsys.readouterr().out
        assert "branin" in stdout and "regret.svg" in stdout

    def test_raw_csv_row_counts(self, tmp_path):
        out = tmp_path / "exp"
        assert run_main(
            ["run", "--benchmark", "branin", "--algos", "soo",
             "--repeats", "1", "--budget", "5", "--out", str(out)]
        ) == 0
        rows = read_raw_csv(out / "raw.csv")
        # SOO may complete the final sibling pair, one extra record.
        assert len(rows) in (5, 6)
        assert {r["algorithm"] for r in rows} == {"soo"}

    def test_svg_is_well_formed(self, tmp_path):
        out = tmp_path / "exp"
        run_main(
            ["run", "--benchmark", "branin", "--algos", "soo,bamsoo,gpucb",
             "--repeats", "1", "--budget", "6", "--out", str(out), "--plot"]
        )
        root = ET.parse(out / "regret.svg").getroot()
        assert root.tag.endswith("svg")

    def test_seed_flag_changes_results(self, tmp_path):
        outs = []
        for seed in ("0", "1"):
            out = tmp_path / f"s{seed}"
            run_main(
                ["run", "--benchmark", "branin", "--algos", "gpucb",
                 "--repeats", "1", "--budget", "4", "--seed", seed,
                 "--out", str(out)]
            )
            outs.append((out / "raw.csv").read_text())
        assert outs[0] != outs[1]


class TestConfigMerging:
    def test_config_file_supplies_options(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"benchmark": "branin", "algos": "soo", "budget": 4, "repeats": 1}))
        out = tmp_path / "exp"
        assert run_main(["run", "--config", str(cfg), "--out", str(out)]) == 0
        assert (out / "raw.csv").exists()

    def test_flag_overrides_config(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"benchmark": "branin", "budget": 4}))
        code = run_main(["dump-config", "--config", str(cfg), "--budget", "9"])
        assert code == 0
        dumped = json.loads(capsys.readouterr().out)
        assert dumped["budget"] == 9

    def test_unknown_config_key(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"benchmark": "branin", "bugget": 4}))
        assert run_main(["dump-config", "--config", str(cfg)]) == 2
        assert "bugget" in capsys.readouterr().err

    def test_config_must_be_object(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("[1, 2]")
        with pytest.raises(BadArgsError):
            load_config(cfg)

    def test_env_seed_fallback(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("OPTOPT_SEED", "42")
        run_main(["dump-config", "--benchmark", "branin"])
        assert json.loads(capsys.readouterr().out)["seed"] == 42

    def test_env_seed_loses_to_flag(self, tmp_path, capsys, monkeypatch):
        monkeypatch.setenv("OPTOPT_SEED", "42")
        run_main(["dump-config", "--benchmark", "branin", "--seed", "7"])
        assert json.loads(capsys.readouterr().out)["seed"] == 7

    def test_bad_env_seed(self, monkeypatch, capsys):
        monkeypatch.setenv("OPTOPT_SEED", "abc")
        assert run_main(["dump-config", "--benchmark", "branin"]) == 2

    def test_kernel_flags(self, capsys):
        run_main(
            ["dump-config", "--benchmark", "hartmann3",
             "--kernel-family", "matern52", "--lengthscales", "0.3"]
        )
        dumped = json.loads(capsys.readouterr().out)
        assert dumped["kernel_family"] == "matern52"
        # A single value broadcasts across the benchmark dimension.
        assert [float(v) for v in dumped["lengthscales"].split(",")] == [0.3, 0.3, 0.3]

    def test_lengthscale_count_mismatch(self):
        assert main(
            ["dump-config", "--benchmark", "hartmann3", "--lengthscales", "0.3,0.4"]
        ) == 2


class TestDumpConfigRoundTrip:
    def test_round_trip_is_identical_spec(self, tmp_path, capsys):
        argv = [
            "dump-config", "--benchmark", "shekel10", "--algos", "bamsoo,gpucb",
            "--repeats", "3", "--budget", "22", "--eta", "0.01", "--seed", "5",
            "--kernel-family", "matern52", "--lengthscales", "0.25,0.5,0.25,0.5",
            "--signal-variance", "2.0", "--hmax-epsilon", "0.4",
            "--value-shift", "0.1", "--value-scale", "1.2", "--value-clip", "3.0",
        ]
        assert run_main(argv) == 0
        config = json.loads(capsys.readouterr().out)
        spec_direct = spec_from_options({**{k: None for k in config}, **config})
        assert spec_to_config(spec_direct) == config
        spec_again = spec_from_options({**{k: None for k in config}, **config})
        assert spec_again == spec_direct

    def test_dump_to_file(self, tmp_path):
        path = tmp_path / "cfg.json"
        assert run_main(
            ["dump-config", "--benchmark", "branin", "--out", str(path)]
        ) == 0
        assert json.loads(path.read_text())["benchmark"] == "branin"

    def test_dumped_file_feeds_run(self, tmp_path):
        path = tmp_path / "cfg.json"
        run_main(
            ["dump-config", "--benchmark", "branin", "--algos", "soo",
             "--budget", "4", "--repeats", "1", "--out", str(path)]
        )
        out = tmp_path / "exp"
        assert run_main(["run", "--config", str(path), "--out", str(out)]) == 0


class TestVerify:
    def test_single_suite_smoke(self, capsys):
        assert run_main(["verify", "--suite", "variance-bound", "--trials", "20"]) == 0
        out = capsys.readouterr().out
        assert "variance-bound" in out and "PASS" in out

    def test_spec_from_options_requires_benchmark(self):
        with pytest.raises(BadArgsError):
            spec_from_options({k: None for k in (
                "benchmark", "algos", "repeats", "budget", "eta", "seed",
                "kernel_family", "lengthscales", "signal_variance",
                "hmax_epsilon", "value_shift", "value_scale", "value_clip",
            )})
