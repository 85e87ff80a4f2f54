"""Configuration parsing: defaults, validation, and error reporting."""

import pytest

from torusdamp.config import parse_config, parse_config_file
from torusdamp.errors import ConfigError

MINIMAL = """
[grid]
dim = 1
[damping]
gamma = 1.0
alpha = 1.0
"""


class TestCustomLayout:
    def test_minimal_config_gets_defaults(self):
        cfg = parse_config(MINIMAL)
        assert not cfg.is_suite
        assert cfg.threads == 1
        assert len(cfg.jobs) == 1
        result = cfg.jobs[0][1]()
        assert result.extras["dt"] == 1e-3
        assert result.extras["initial"]["kind"] == "constant"
        assert result.extras["t_final"] <= 10.0 + 1e-9

    def test_full_custom_config(self):
        text = """
[grid]
dim = 1
points = 64
lengths = 6.283185307179586
[damping]
gamma = 2.0
alpha = 0.5
delta = 0.01
[nls]
enabled = true
lambda = 1.0
sigma = 1.0
[scheme]
dt = 0.002
splitting = strang
substeps = 4
[initial]
kind = random
seed = 3
decay = 1.5
[run]
name = custom_run
t_max = 0.1
record_every = 5
checks = mass_monotone, no_extinction
"""
        cfg = parse_config(text)
        assert cfg.name == "custom_run"
        result = cfg.jobs[0][1]()
        assert result.name == "custom_run"
        assert result.passed

    def test_alpha_out_of_range(self):
        text = MINIMAL.replace("alpha = 1.0", "alpha = 1.5")
        with pytest.raises(ConfigError, match="alpha"):
            parse_config(text)

    def test_focusing_supercritical_rejected(self):
        text = MINIMAL + "[nls]\nenabled = true\nlambda = -1.0\nsigma = 3.0\n"
        with pytest.raises(ConfigError, match="sigma"):
            parse_config(text)

    def test_unknown_key_names_key_and_line(self):
        text = "[grid]\ndim = 1\nbogus = 7\n[damping]\ngamma = 1.0\nalpha = 1.0\n"
        with pytest.raises(ConfigError, match=r"line 3.*bogus"):
            parse_config(text)

    def test_unknown_section_rejected(self):
        with pytest.raises(ConfigError, match="mystery"):
            parse_config(MINIMAL + "[mystery]\nx = 1\n")

    def test_unknown_check_rejected(self):
        with pytest.raises(ConfigError, match="no_such"):
            parse_config(MINIMAL + "[run]\nchecks = no_such\n")

    def test_duplicate_key_rejected(self):
        with pytest.raises(ConfigError, match="duplicate key"):
            parse_config("[grid]\ndim = 1\ndim = 2\n")

    def test_key_outside_section_rejected(self):
        with pytest.raises(ConfigError, match="outside"):
            parse_config("dim = 1\n")

    def test_malformed_header_rejected(self):
        with pytest.raises(ConfigError, match="malformed"):
            parse_config("[grid\ndim = 1\n")

    def test_type_errors_carry_line(self):
        with pytest.raises(ConfigError, match="line 2"):
            parse_config("[grid]\ndim = one\n[damping]\ngamma = 1.0\nalpha = 1.0\n")

    def test_missing_required_sections(self):
        with pytest.raises(ConfigError):
            parse_config("[grid]\ndim = 1\n")

    def test_bad_substeps(self):
        with pytest.raises(ConfigError, match="substeps"):
            parse_config(MINIMAL + "[scheme]\nsubsteps = sometimes\n")


class TestNamedScenarioLayout:
    def test_named_kind(self):
        text = """
[scenario]
kind = extinction_1d
seed = 1
points = 64
t_max = 2.0
"""
        cfg = parse_config(text)
        assert cfg.jobs[0][0] == "extinction_1d"
        result = cfg.jobs[0][1]()
        assert result.passed

    def test_unknown_kind(self):
        with pytest.raises(ConfigError, match="unknown scenario kind"):
            parse_config("[scenario]\nkind = warp_drive\n")

    def test_nls_requires_lambda(self):
        with pytest.raises(ConfigError, match="lambda"):
            parse_config("[scenario]\nkind = nls_corollary\n").jobs[0][1]()

    def test_nls_focusing_validated_at_parse(self):
        text = "[scenario]\nkind = nls_corollary\nlambda = -1.0\nsigma = 2.5\n"
        with pytest.raises(ConfigError, match="sigma"):
            parse_config(text)


class TestSuiteLayout:
    def test_two_scenarios(self):
        text = """
[suite]
name = demo
threads = 2
[scenario first]
kind = extinction_1d
points = 64
seed = 0
t_max = 2.0
[scenario second]
kind = extinction_1d
points = 64
seed = 1
t_max = 2.0
"""
        cfg = parse_config(text)
        assert cfg.is_suite and cfg.name == "demo" and cfg.threads == 2
        assert [name for name, _ in cfg.jobs] == ["first", "second"]

    def test_scenario_section_requires_kind(self):
        with pytest.raises(ConfigError, match="kind"):
            parse_config("[suite]\n[scenario x]\nseed = 1\n")

    def test_unknown_section_in_suite(self):
        with pytest.raises(ConfigError, match="grid"):
            parse_config("[suite]\n[grid]\ndim = 1\n")

    def test_override_validation(self):
        text = "[suite]\n[scenario x]\nkind = extinction_1d\nalpha = 2.0\n"
        with pytest.raises(ConfigError, match="alpha"):
            parse_config(text)


def test_missing_file_raises_config_error(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        parse_config_file(tmp_path / "absent.cfg")
