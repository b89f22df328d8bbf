import json

import pytest

from phasestep.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSimulate:
    def test_ie_monotone_summary(self, capsys, tmp_path):
        out = tmp_path / "traj.csv"
        code, stdout, _ = run(
            capsys,
            "simulate", "--scheme", "ie", "--u0", "3", "--eps", "0.1",
            "--h", "0.01", "--steps", "10000", "--out", str(out),
        )
        assert code == 0
        assert stdout.startswith("MonotoneCorrect limit=1")
        header = out.read_text().splitlines()[0]
        assert header == "n,t,u,energy,energy_modified"

    def test_ee_wrong_equilibrium_summary(self, capsys):
        code, stdout, _ = run(
            capsys,
            "simulate", "--scheme", "ee", "--u0", "3", "--eps", "0.1",
            "--h", "0.0015",
        )
        assert code == 0
        assert stdout.startswith("WrongEquilibrium limit=-1")

    def test_constant_trajectory(self, capsys, tmp_path):
        out = tmp_path / "traj.csv"
        code, stdout, _ = run(
            capsys,
            "simulate", "--scheme", "cn", "--u0", "1", "--eps", "0.1",
            "--h", "0.02", "--out", str(out),
        )
        assert code == 0
        rows = out.read_text().splitlines()[1:]
        assert all(row.split(",")[2] == "1" for row in rows)

    def test_refused_exit_code(self, capsys):
        code, _, stderr = run(
            capsys,
            "simulate", "--scheme", "ie", "--u0", "0.5", "--eps", "0.1",
            "--h", "0.02",
        )
        assert code == 2
        assert "0.01" in stderr  # message names the solvability bound

    def test_diverged_exit_code(self, capsys):
        code, stdout, _ = run(
            capsys,
            "simulate", "--scheme", "ee", "--u0", "3", "--eps", "0.1", "--h", "1",
        )
        assert code == 3
        assert stdout.startswith("Diverged")

    def test_byte_identical_reruns(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = [
            "simulate", "--scheme", "im", "--u0", "0.7", "--eps", "0.1",
            "--h", "0.009",
        ]
        assert main(argv + ["--out", str(a)]) == 0
        assert main(argv + ["--out", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()


class TestThreshold:
    def test_all_schemes_json(self, capsys):
        code, stdout, _ = run(
            capsys,
            "threshold", "--scheme", "all", "--u0", "3", "--eps", "0.1",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(stdout)
        assert len(payload) == 6
        by_scheme = {entry["scheme"]: entry for entry in payload}
        assert by_scheme["ee"]["h_star"] == pytest.approx(1.0 / 1200.0, rel=1e-12)
        assert by_scheme["ie"]["h_star"] == pytest.approx(0.01, rel=1e-12)
        assert by_scheme["im"]["h_star"] == pytest.approx(0.08 / 24.0, rel=1e-12)

    def test_equilibrium_table(self, capsys):
        code, stdout, _ = run(
            capsys, "threshold", "--scheme", "ee", "--u0", "0", "--eps", "0.1"
        )
        assert code == 0
        assert "equilibrium" in stdout
        assert "inf" in stdout

    def test_large_u0_ie(self, capsys):
        code, stdout, _ = run(
            capsys,
            "threshold", "--scheme", "ie", "--u0", "1000", "--eps", "0.1",
            "--format", "json",
        )
        assert json.loads(stdout)[0]["h_star"] == pytest.approx(0.01, rel=1e-12)


class TestAdversarial:
    def test_golden_ratio(self, capsys):
        code, stdout, _ = run(
            capsys,
            "adversarial", "--scheme", "ee", "--eps", "0.1", "--h", "0.01",
            "--format", "json",
        )
        assert code == 0
        u0 = json.loads(stdout)["u0"]
        assert u0 == pytest.approx((1 + 5**0.5) / 2, abs=1e-10)

    def test_unsupported_scheme(self, capsys):
        code, _, stderr = run(
            capsys, "adversarial", "--scheme", "cn", "--eps", "0.1", "--h", "0.01"
        )
        assert code == 1
        assert "cn" in stderr


class TestOrder:
    def test_csv_output(self, capsys, tmp_path):
        out = tmp_path / "order.csv"
        code, stdout, _ = run(
            capsys,
            "order", "--scheme", "cn", "--u0", "0.5", "--eps", "0.25",
            "--h", "0.015625", "--T", "0.25", "--levels", "4", "--out", str(out),
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "h,error,observed_order"
        assert len(lines) == 5
        last_order = float(lines[-1].split(",")[2])
        assert last_order == pytest.approx(2.0, abs=0.2)


class TestSweep:
    def test_small_grid(self, capsys, tmp_path):
        out = tmp_path / "sweep.csv"
        code, _, _ = run(
            capsys,
            "sweep", "--scheme", "ee", "--eps", "0.1",
            "--u0-range", "1.1:2:3", "--h-range", "1e-4:1e-2:4:log",
            "--steps", "50000", "--out", str(out),
        )
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "u0,h,class,limit,steps"
        assert len(lines) == 1 + 3 * 4


class TestReproduce:
    def test_test1_manifest(self, capsys, tmp_path):
        out = tmp_path / "t1"
        code, _, _ = run(capsys, "reproduce", "test1", "--out", str(out))
        assert code == 0
        manifest = json.loads((out / "manifest.json").read_text())
        ee_safe_05 = next(
            e for e in manifest
            if e["scheme"] == "ee" and e["u0"] == 0.5 and e["label"] == "safe"
        )
        assert ee_safe_05["class"] == "MonotoneCorrect"
        assert (out / ee_safe_05["file"]).exists()
        ie_cases = [e for e in manifest if e["scheme"] == "ie"]
        assert ie_cases and all(e["class"] == "MonotoneCorrect" for e in ie_cases)

    def test_test2_cn_safe_case(self, capsys, tmp_path):
        out = tmp_path / "t2"
        code, _, _ = run(capsys, "reproduce", "test2", "--out", str(out))
        assert code == 0
        manifest = json.loads((out / "manifest.json").read_text())
        cn_safe_3 = next(
            e for e in manifest
            if e["scheme"] == "cn" and e["u0"] == 3.0 and e["label"] == "safe"
        )
        assert cn_safe_3["class"] == "MonotoneCorrect"
        refused = [e for e in manifest if e["label"] == "above_solvability"]
        assert refused and all(e["class"] == "SolverRefused" for e in refused)


class TestConfigFile:
    def test_config_supplies_flags(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(
            "# simulation settings\nscheme=ie\nu0=3\neps=0.1\nh=0.01\nsteps=10000\n"
        )
        code, stdout, _ = run(capsys, "simulate", "--config", str(cfg))
        assert code == 0
        assert stdout.startswith("MonotoneCorrect")

    def test_command_line_overrides_config(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("scheme=ie\nu0=3\neps=0.1\nh=0.02\n")
        # config h would be refused; the command line wins and succeeds
        code, stdout, _ = run(
            capsys, "simulate", "--config", str(cfg), "--h", "0.01"
        )
        assert code == 0
        assert stdout.startswith("MonotoneCorrect")

    def test_boolean_config_key(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("scheme=ie\nu0=3\neps=0.1\nh=0.02\nforce-unsafe=true\n")
        code, stdout, _ = run(capsys, "simulate", "--config", str(cfg))
        assert code == 0  # forced mode instead of refusal

    def test_missing_required_flags(self, capsys):
        with pytest.raises(SystemExit):
            main(["simulate", "--scheme", "ee"])
