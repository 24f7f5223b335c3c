import json
from typing import Annotated

from hypertess.configuration import Configuration, configurable
from hypertess.hull import HullBuilder
from hypertess.lorentz import Tolerances

@configurable
class Probe:
    level: Annotated[int, "Param", "a level"] = 3
    ratio: Annotated[float, "Param", "a ratio", "--probe-ratio"] = 0.5

    def __init__(self, configuration: Configuration):
        configuration.initialize(self)

def test_defaults_are_set_on_initialized_objects():
    probe = Probe(Configuration())
    assert probe.level == 3
    assert probe.ratio == 0.5

def test_parameters_are_removed_from_the_class():
    assert not hasattr(Probe, "level")
    assert Configuration.params["Probe"]["ratio"]["flag"] == "--probe-ratio"
    assert Configuration.params["Probe"]["level"]["flag"] == "--Probe.level"

def test_parse_args_uses_default_and_short_flags():
    configuration = Configuration()
    configuration.parse_args(["--Probe.level", "7", "--probe-ratio", "0.25", "--eps", "1e-6"])
    assert configuration.get_param_value("Probe", "level") == 7
    assert configuration.get_param_value("Probe", "ratio") == 0.25
    assert Tolerances(configuration).eps == 1e-6

def test_boolean_parameters_have_negated_flags():
    configuration = Configuration()
    configuration.parse_args(["--no-exact"])
    assert Tolerances(configuration).exact is False

def test_json_round_trip_restores_values():
    configuration = Configuration()
    configuration.parse_args(["--seed", "11", "--Probe.level", "5"])
    restored = Configuration()
    restored.from_json(configuration.to_json())
    assert restored.data == configuration.data
    assert HullBuilder(restored).seed == 11

def test_from_json_ignores_unknown_entries_and_resets_missing_ones():
    configuration = Configuration()
    configuration.set_param_value("Probe", "level", 9)
    configuration.from_json(json.dumps({"Probe": {"ratio": "0.75", "unknown": 1}, "Nothing": {"x": 2}}))
    assert configuration.get_param_value("Probe", "level") == 3
    assert configuration.get_param_value("Probe", "ratio") == 0.75
    assert "Nothing" not in configuration.data
