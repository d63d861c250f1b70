import math

import numpy as np
import pandas as pd

from figgen.cli import main

K50 = 2.0 * math.pi * 50e6


def _write_sweep(tmp_path, drop=()):
    rows = []
    for topo in ("linear", "star"):
        for t2 in (5e-6, 20e-6):
            rows.append({
                "topology": topo, "kappa_rad_s": K50, "T1_s": 2 * t2,
                "T2_s": t2, "realizations": 100, "fidelity": 0.99,
                "fidelity_std": 1e-3, "e3f": 0.9, "e3f_std": 1e-3,
                "phi2": 0.0, "phi3": 0.0,
            })
    frame = pd.DataFrame(rows).drop(columns=list(drop))
    path = tmp_path / "sweep.csv"
    frame.to_csv(path, index=False)
    return str(path)


class TestCli:
    def test_infidelity_panel(self, tmp_path):
        path = _write_sweep(tmp_path)
        out = tmp_path / "fig.png"
        assert main(["--input", path, "--panel", "infidelity",
                     "--out", str(out)]) == 0
        assert out.exists()

    def test_schema_mismatch_exit_2(self, tmp_path, capsys):
        path = _write_sweep(tmp_path, drop=("fidelity_std",))
        assert main(["--input", path, "--panel", "infidelity",
                     "--out", str(tmp_path / "x.png")]) == 2
        assert "fidelity_std" in capsys.readouterr().err

    def test_missing_file_exit_1(self, tmp_path):
        assert main(["--input", str(tmp_path / "nope.csv"),
                     "--panel", "e3f_gap",
                     "--out", str(tmp_path / "x.png")]) == 1

    def test_pulse_overlay_multiple_inputs(self, tmp_path):
        inputs = []
        for n in (1.0, 2.0):
            t = np.linspace(-1e-7, 1e-7, 101)
            g = 0.5 * K50 / np.cosh(0.5 * K50 * t) / math.sqrt(n)
            path = tmp_path / f"n{n}.csv"
            pd.DataFrame({"t_seconds": t, "value_rad_per_s": g}).to_csv(
                path, index=False)
            inputs += ["--input", str(path)]
        out = tmp_path / "pulses.png"
        assert main(inputs + ["--panel", "pulses", "--out", str(out)]) == 0
        assert out.exists()

    def test_bad_usage_exit_2(self):
        assert main(["--panel", "infidelity"]) == 2
