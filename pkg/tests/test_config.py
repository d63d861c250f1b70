import json
import math

import pytest

from fqst.config import RunConfig, config_hash, load_config
from fqst.errors import ConfigError


class TestLoadConfig:
    def test_hz_suffix_conversion(self):
        cfg = load_config({"kappa_hz": 50e6, "omega_hz": 8.407e9,
                           "output": "x.csv"})
        assert cfg.kappas == (pytest.approx(2 * math.pi * 50e6),)
        assert cfg.omega == pytest.approx(2 * math.pi * 8.407e9)

    def test_hz_suffix_on_lists(self):
        cfg = load_config({"kappa_hz": [10e6, 50e6]})
        assert cfg.kappas == pytest.approx(
            (2 * math.pi * 10e6, 2 * math.pi * 50e6))

    def test_rad_s_passthrough(self):
        cfg = load_config({"kappas": [1e8]})
        assert cfg.kappas == (1e8,)

    def test_defaults(self):
        cfg = RunConfig()
        assert cfg.omega == pytest.approx(2 * math.pi * 8.407e9)
        assert cfg.mode_count == 100
        assert cfg.length_m == 5.0
        assert cfg.lamb_shift_fraction == 0.0065
        assert cfg.realizations == 1000

    def test_inf_times(self):
        cfg = load_config({"t1_s": ["inf"], "t2_s": [None]})
        assert math.isinf(cfg.t1_s[0])
        assert math.isinf(cfg.t2_s[0])

    def test_from_file(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"topologies": ["star"], "seed": 9}))
        cfg = load_config(str(path))
        assert cfg.topologies == ("star",)
        assert cfg.seed == 9

    def test_overrides_win(self):
        cfg = load_config({"seed": 1, "realizations": 10},
                          overrides={"seed": 2, "realizations": None})
        assert cfg.seed == 2
        assert cfg.realizations == 10

    def test_unknown_key(self):
        with pytest.raises(ConfigError):
            load_config({"bogus": 1})

    def test_bad_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        with pytest.raises(ConfigError):
            load_config(str(path))

    def test_missing_file(self):
        with pytest.raises(ConfigError):
            load_config("/does/not/exist.json")

    def test_mismatched_noise_lists(self):
        with pytest.raises(ConfigError):
            load_config({"t1_s": [1e-6, 2e-6], "t2_s": [1e-6]})

    def test_unknown_topology(self):
        with pytest.raises(ConfigError):
            load_config({"topologies": ["ring"]})


class TestPlanSelection:
    def test_topology_defaults(self):
        cfg = RunConfig(topologies=("linear", "star"))
        assert cfg.plan_for("linear") == "sequential_w"
        assert cfg.plan_for("star") == "star_w"

    def test_explicit_plan(self):
        cfg = RunConfig(plan="bell_endpoint")
        assert cfg.plan_for("linear") == "bell_endpoint"

    def test_unknown_plan(self):
        with pytest.raises(ConfigError):
            RunConfig(plan="ghz")


class TestConfigHash:
    def test_stable(self):
        assert config_hash(RunConfig()) == config_hash(RunConfig())

    def test_physics_sensitivity(self):
        assert config_hash(RunConfig(seed=1)) != config_hash(RunConfig(seed=2))

    def test_output_path_ignored(self):
        a = config_hash(RunConfig(output="a.csv"))
        b = config_hash(RunConfig(output="b.csv"))
        assert a == b
