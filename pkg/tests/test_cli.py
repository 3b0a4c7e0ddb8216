import csv
import json

import numpy as np
import pytest

from oscprop import acceptance, cli
from oscprop.errors import ConfigError

SHO = """\
[scenario]
variant = sho

[grid]
x_min = -10
x_max = 10
n_points = 257

[initial]
kind = gaussian
center = 0.5
width = 1.2

[times]
t = 0.3, 0.9
"""


def run(tmp_path, text, command="propagate", name="scn.ini", out="out"):
    cfg = tmp_path / name
    cfg.write_text(text)
    return cli.main([command, "--config", str(cfg), "--out", str(tmp_path / out)])


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


class TestPropagate:
    def test_outputs(self, tmp_path):
        assert run(tmp_path, SHO) == 0
        rows = read_csv(tmp_path / "out" / "psi_001.csv")
        assert rows[0] == ["x", "re", "im"]
        assert len(rows) == 258
        diag = json.loads((tmp_path / "out" / "diagnostics.json").read_text())
        assert [d["t"] for d in diag] == [0.3, 0.9]
        for d in diag:
            assert d["norm"] == pytest.approx(1.0, abs=1e-8)
            assert d["parseval_defect"] < 1e-8

    def test_rerun_is_byte_identical(self, tmp_path):
        assert run(tmp_path, SHO, out="a") == 0
        resolved = tmp_path / "a" / "resolved_config.json"
        assert cli.main(["propagate", "--config", str(resolved), "--out", str(tmp_path / "b")]) == 0
        for name in ("psi_000.csv", "psi_001.csv", "diagnostics.json", "resolved_config.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_threads_do_not_change_output(self, tmp_path):
        cfg = tmp_path / "scn.ini"
        cfg.write_text(SHO)
        cli.main(["propagate", "--config", str(cfg), "--out", str(tmp_path / "a")])
        cli.main(["propagate", "--config", str(cfg), "--out", str(tmp_path / "b"), "--threads", "2"])
        assert ((tmp_path / "a" / "psi_001.csv").read_bytes()
                == (tmp_path / "b" / "psi_001.csv").read_bytes())

    def test_spectral_matches_integral(self, tmp_path):
        text = (SHO.replace("variant = sho", "variant = forced")
                + "\n[drive]\nf = cosine amplitude=0.6 frequency=1\ng = 0.2\n")
        assert run(tmp_path, text, out="i") == 0
        spectral = text.replace("[scenario]\n", "[scenario]\nmethod = spectral\nn_max = 80\n")
        assert run(tmp_path, spectral, out="s") == 0
        a = np.array(read_csv(tmp_path / "i" / "psi_001.csv")[1:], dtype=float)
        b = np.array(read_csv(tmp_path / "s" / "psi_001.csv")[1:], dtype=float)
        assert np.abs(a - b).max() < 1e-6

    def test_json_config(self, tmp_path):
        cfg = {"scenario": {"variant": "sho"}, "grid": {"n_points": 129, "x_min": -10, "x_max": 10},
               "initial": {"kind": "eigenstate", "n": 2}, "times": {"t": "0.5"}}
        assert run(tmp_path, json.dumps(cfg), name="scn.json") == 0
        diag = json.loads((tmp_path / "out" / "diagnostics.json").read_text())
        assert diag[0]["energy_expectation"] == pytest.approx(2.5, rel=1e-8)

    def test_superposition_initial_state(self, tmp_path):
        text = SHO.replace("kind = gaussian\ncenter = 0.5\nwidth = 1.2",
                           "kind = sum\nterms = 0.6 eigenstate n=0 ; 0.8 eigenstate n=2")
        assert run(tmp_path, text) == 0
        diag = json.loads((tmp_path / "out" / "diagnostics.json").read_text())
        assert diag[0]["norm"] == pytest.approx(1.0, abs=1e-8)


class TestErrors:
    def test_caustic_exits_3(self, tmp_path, capsys):
        assert run(tmp_path, SHO.replace("t = 0.3, 0.9", "t = 3.141592653589793")) == 3
        assert "caustic-free window" in capsys.readouterr().err

    def test_bad_variant_reports_line(self, tmp_path, capsys):
        assert run(tmp_path, SHO.replace("variant = sho", "variant = quartic")) == 2
        assert "line 2" in capsys.readouterr().err

    def test_unordered_times(self, tmp_path):
        assert run(tmp_path, SHO.replace("t = 0.3, 0.9", "t = 0.9, 0.3")) == 2

    def test_missing_times(self, tmp_path):
        assert run(tmp_path, SHO.replace("[times]\nt = 0.3, 0.9\n", "")) == 2

    def test_bad_drive(self, tmp_path):
        text = SHO.replace("variant = sho", "variant = forced") + "\n[drive]\nf = wobble a=1\n"
        assert run(tmp_path, text) == 2

    def test_parse_errors_carry_field(self):
        scn = cli.parse_config("[scenario]\nvariant = sho\n[grid]\nn_points = many\n")
        with pytest.raises(ConfigError) as info:
            cli._grid(scn)
        assert "grid" in str(info.value)


class TestAmplitudesAndKernels:
    def test_amplitudes(self, tmp_path):
        text = ("[scenario]\nvariant = forced\nn_max = 6\n[drive]\nf = 0.5\ng = 0.2\n"
                "[times]\nt = 0.4\n")
        assert run(tmp_path, text, "amplitudes") == 0
        rows = read_csv(tmp_path / "out" / "amplitudes_000.csv")
        assert rows[0] == ["n", "m", "re", "im"] and len(rows) == 50
        meta = json.loads((tmp_path / "out" / "amplitudes_000.json").read_text())
        assert meta["N"] == 6 and len(meta["column_norms"]) == 7

    def test_real_kernel_family(self, tmp_path):
        text = "[scenario]\nvariant = mehler\n[params]\nr = 0.5\n[grid]\nx_min = -2\nx_max = 2\nn_points = 5\n"
        assert run(tmp_path, text, "kernels") == 0
        rows = read_csv(tmp_path / "out" / "kernel_000.csv")
        assert rows[0] == ["x", "y", "value"] and len(rows) == 26
        x, y, v = map(float, rows[13])
        ref = np.exp((4 * x * y * 0.5 - (x * x + y * y) * 1.25) / 1.5) / np.sqrt(np.pi * 0.75)
        assert v == pytest.approx(ref, rel=1e-14)

    def test_complex_kernel(self, tmp_path):
        text = "[scenario]\nvariant = sho\n[grid]\nn_points = 3\nx_min = -1\nx_max = 1\n[times]\nt = 0.5\n"
        assert run(tmp_path, text, "kernels") == 0
        assert read_csv(tmp_path / "out" / "kernel_000.csv")[0] == ["x", "y", "re", "im"]

    def test_landau_kernels_rejected(self, tmp_path):
        assert run(tmp_path, "[scenario]\nvariant = landau\n[times]\nt = 0.5\n", "kernels") == 2


class TestVerify:
    def test_subset(self, tmp_path):
        assert run(tmp_path, "[verify]\ncriteria = 5\n", "verify") == 0
        report = json.loads((tmp_path / "out" / "verify_report.json").read_text())
        assert report and all(r["criterion"] == 5 and r["pass"] for r in report)

    def test_failure_exits_4(self, tmp_path, monkeypatch):
        bad = acceptance.CaseResult(1, "broken", 1.0, 0.5, False)
        monkeypatch.setattr(acceptance, "cases", lambda crit=None: [lambda: bad])
        assert run(tmp_path, "[verify]\ncriteria = 1\n", "verify") == 4

    def test_expected_failure_exits_0(self, tmp_path, monkeypatch):
        known = acceptance.CaseResult(1, "known", 1.0, 0.5, False, expected_fail=True)
        monkeypatch.setattr(acceptance, "cases", lambda crit=None: [lambda: known])
        assert run(tmp_path, "[verify]\ncriteria = 1\n", "verify") == 0
