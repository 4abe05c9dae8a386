"""Command-line interface: subcommand behavior, exit codes, file emission,
JSON config overrides, and the figure-rendering path."""

import json
import math

import numpy as np
import pytest

import cavmag as cm


def run(args):
    return cm.run_cli(args)


class TestEp3Command:
    def test_symmetric_text_output(self, capsys):
        assert run(["ep3", "--eta", "1", "--gamma2", "1.5"]) == 0
        out = capsys.readouterr().out
        values = dict(
            line.split(" = ") for line in out.strip().splitlines() if " = " in line
        )
        assert float(values["g_ep3"]) == pytest.approx(1.7321, abs=5e-5)
        assert float(values["delta_ep3"]) == pytest.approx(0.8660, abs=5e-5)

    def test_asymmetric_json_output(self, tmp_path):
        out = tmp_path / "ep3.json"
        code = run(["ep3", "--eta", "2", "--gamma2", "1.5",
                    "--format", "json", "--out", str(out)])
        assert code == 0
        data = json.loads(out.read_text())
        assert data["g_ep3"] == pytest.approx(3.394, abs=1e-3)
        assert data["k"] == pytest.approx(0.494, abs=1e-3)
        assert data["g_min"] < data["g_ep3"]


class TestEp2Command:
    def test_asymmetric_value(self, tmp_path):
        out = tmp_path / "ep2.json"
        assert run(["ep2", "--eta", "2", "--gamma2", "1.5",
                    "--format", "json", "--out", str(out)]) == 0
        data = json.loads(out.read_text())
        assert data["g_ep2"] == pytest.approx(3.600, abs=2e-3)

    def test_bracket_failure_exit_code(self, capsys):
        g_upper = cm.ep3_critical(2.0, 1.5).g_ep3 * 1.0001
        code = run(["ep2", "--eta", "2", "--gamma2", "1.5",
                    "--g-upper", f"{g_upper}"])
        assert code == 1
        assert "BracketFailure" in capsys.readouterr().err


class TestEigsCommand:
    def test_json_matches_library(self, tmp_path, symmetric_family):
        out = tmp_path / "eigs.json"
        assert run(["eigs", "--eta", "1", "--k", "1", "--gamma2", "1.5",
                    "--g1", "2.0", "--format", "json", "--out", str(out)]) == 0
        data = json.loads(out.read_text())
        assert data["classification"] == "all_real"
        values = sorted(v[0] for v in data["eigenvalues"])
        s3 = math.sqrt(3.0)
        for got, want in zip(values, (-s3, 0.0, s3)):
            assert got == pytest.approx(want, abs=1e-9)

    def test_below_minimum_exits_one_with_error_name(self, capsys):
        code = run(["eigs", "--eta", "1", "--k", "1", "--gamma2", "1.5", "--g1", "1.0"])
        assert code == 1
        assert "CouplingBelowMinimum" in capsys.readouterr().err

    def test_missing_g1_is_numeric_failure(self, capsys):
        code = run(["eigs", "--eta", "1", "--gamma2", "1.5"])
        assert code == 1
        assert "--g1" in capsys.readouterr().err

    def test_tol_flag_loosens_classification(self, tmp_path):
        """A huge reality tolerance reclassifies the conjugate pair as real."""
        common = ["eigs", "--eta", "1", "--k", "1", "--gamma2", "1.5",
                  "--g1", "1.6", "--format", "json"]
        strict = tmp_path / "strict.json"
        loose = tmp_path / "loose.json"
        assert run([*common, "--out", str(strict)]) == 0
        assert run([*common, "--tol", "10.0", "--out", str(loose)]) == 0
        assert json.loads(strict.read_text())["classification"] \
            == "one_real_plus_conjugate_pair"
        assert json.loads(loose.read_text())["classification"] == "all_real"


class TestCpaCommand:
    def test_symmetric_three_roots(self, tmp_path):
        out = tmp_path / "cpa.json"
        assert run(["cpa", "--eta", "1", "--k", "1", "--gamma2", "1.5",
                    "--g1", "2.0", "--format", "json", "--out", str(out)]) == 0
        data = json.loads(out.read_text())
        assert data["count"] == 3
        s3 = math.sqrt(3.0)
        for got, want in zip(data["detunings"], (-s3, 0.0, s3)):
            assert got == pytest.approx(want, abs=1e-8)


class TestSpectrumCommand:
    def test_csv_payload(self, tmp_path):
        out = tmp_path / "spec.csv"
        assert run(["spectrum", "--eta", "1", "--k", "1", "--gamma2", "1.5",
                    "--g1", "2.0", "--grid", "201", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "detuning,re_s1,im_s1,s_tot_sq"
        assert len(lines) == 202
        row = np.array(lines[1].split(","), dtype=float)
        family = cm.symmetric_figure_family()
        params = cm.realize_family(family, 2.0)
        s1 = complex(cm.s1_values(row[0], params))
        assert row[1] == pytest.approx(s1.real, rel=1e-9)
        assert row[3] == pytest.approx(2 * abs(s1) ** 2, rel=1e-9)


class TestDynamicsCommand:
    def test_free_trajectory_csv(self, tmp_path):
        out = tmp_path / "traj.csv"
        assert run(["dynamics", "--eta", "1", "--k", "1", "--gamma2", "1.5",
                    "--g1", "2.0", "--t-final", "0.1", "--dt", "0.002",
                    "--v0", "1,0,0", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0].startswith("time,re_a")
        assert len(lines) == 52

    def test_driven_trajectory(self, tmp_path):
        out = tmp_path / "traj.csv"
        assert run(["dynamics", "--eta", "1", "--k", "1", "--gamma2", "1.5",
                    "--g1", "2.0", "--t-final", "0.1", "--dt", "0.001",
                    "--drive-omega", "0.0", "--out", str(out)]) == 0
        assert len(out.read_text().splitlines()) == 102

    def test_bad_v0_rejected(self, capsys):
        code = run(["dynamics", "--eta", "1", "--k", "1", "--gamma2", "1.5",
                    "--g1", "2.0", "--v0", "1,2"])
        assert code == 1
        assert "--v0" in capsys.readouterr().err


class TestFigureCommands:
    def test_fig2_csv(self, tmp_path):
        out = tmp_path / "fig2.csv"
        assert run(["fig2", "--grid", "21", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "eta,k"
        assert len(lines) == 22

    def test_fig3_asymmetric_ep_markers(self, tmp_path):
        """Im branches pinch at g_EP3 = 3.394 and vanish beyond g_EP2 = 3.600."""
        out = tmp_path / "fig3.csv"
        assert run(["fig3", "--case", "asymmetric", "--out", str(out)]) == 0
        rows = np.genfromtxt(out, delimiter=",", names=True)
        valid = rows["pseudo_hermitian"] > 0.5
        g1 = rows["g1"][valid]
        im_plus = np.abs(rows["im_omega_plus"][valid])
        step = rows["g1"][1] - rows["g1"][0]
        # last complex point marks EP2
        assert abs(g1[im_plus > 1e-6].max() - 3.600) <= step + 2e-3
        # the pinch where Im vanishes momentarily inside the complex window
        window = (g1 > 3.2) & (g1 < 3.55)
        pinch = g1[window][np.argmin(im_plus[window])]
        assert abs(pinch - 3.394) <= step + 1e-3

    def test_fig4_symmetric_payload(self, tmp_path):
        out = tmp_path / "fig4.csv"
        assert run(["fig4", "--case", "symmetric", "--grid", "11",
                    "--omega-grid", "21", "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "g1,detuning,pseudo_hermitian,s_tot_sq"
        assert len(lines) == 1 + 11 * 21

    def test_fig3_plot_rendering(self, tmp_path):
        out = tmp_path / "fig3.csv"
        png = tmp_path / "fig3.png"
        assert run(["fig3", "--case", "symmetric", "--grid", "51",
                    "--out", str(out), "--plot", str(png)]) == 0
        assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_fig2_plot_rendering(self, tmp_path):
        png = tmp_path / "fig2.png"
        assert run(["fig2", "--grid", "11", "--out", str(tmp_path / "fig2.csv"),
                    "--plot", str(png)]) == 0
        assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_fig4_plot_rendering(self, tmp_path):
        png = tmp_path / "fig4.png"
        assert run(["fig4", "--case", "symmetric", "--grid", "11",
                    "--omega-grid", "15", "--out", str(tmp_path / "fig4.csv"),
                    "--plot", str(png)]) == 0
        assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_config_override(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"g1_range": [2.0, 3.0, 5]}))
        out = tmp_path / "fig3.csv"
        assert run(["fig3", "--case", "symmetric", "--config", str(cfg),
                    "--out", str(out)]) == 0
        rows = np.genfromtxt(out, delimiter=",", names=True)
        assert rows["g1"][0] == pytest.approx(2.0)
        assert rows["g1"][-1] == pytest.approx(3.0)
        assert rows["g1"].size == 5

    def test_unknown_config_key_rejected(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"coupling": 2.0}))
        assert run(["fig3", "--case", "symmetric", "--config", str(cfg)]) == 1
        assert "unknown config keys" in capsys.readouterr().err

    def test_config_supplies_out_and_format(self, tmp_path):
        dest = tmp_path / "fig3.json"
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps(
            {"g1_range": [2.0, 3.0, 4], "out": str(dest), "format": "json"}
        ))
        assert run(["fig3", "--case", "symmetric", "--config", str(cfg)]) == 0
        data = json.loads(dest.read_text())
        assert len(data["rows"]) == 4


class TestUsageErrors:
    def test_no_subcommand(self, capsys):
        assert run([]) == 2
        capsys.readouterr()

    def test_unknown_subcommand(self, capsys):
        assert run(["transmogrify"]) == 2
        capsys.readouterr()

    def test_bad_flag_value(self, capsys):
        assert run(["ep3", "--eta", "two"]) == 2
        capsys.readouterr()


class TestFamilyConfigFile:
    def test_family_defaults_from_config(self, tmp_path):
        cfg = tmp_path / "fam.json"
        cfg.write_text(json.dumps({"eta": 2.0, "gamma_2": 1.5, "g1": 4.0}))
        out = tmp_path / "eigs.json"
        assert run(["eigs", "--config", str(cfg), "--format", "json",
                    "--out", str(out)]) == 0
        data = json.loads(out.read_text())
        assert data["classification"] == "all_real"
