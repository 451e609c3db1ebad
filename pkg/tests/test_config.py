import pytest

from modules.config import RunConfig
from modules.errors import ConfigError


def test_defaults_from_empty_environment():
    config = RunConfig.from_env({})
    assert config == RunConfig()
    assert config.max_universe == 10
    assert config.output == "text"


def test_values_from_environment():
    config = RunConfig.from_env({
        "IMSETMIND_MAX_UNIVERSE": "6",
        "IMSETMIND_OUTPUT": "KV",
        "IMSETMIND_SEED": "7",
        "IMSETMIND_LOG_LEVEL": "debug",
        "IMSETMIND_RESULTS_DIR": "out",
    })
    assert (config.max_universe, config.output, config.seed, config.log_level, config.results_dir) == (
        6, "kv", 7, "DEBUG", "out"
    )


@pytest.mark.parametrize(
    "environ",
    [
        {"IMSETMIND_MAX_UNIVERSE": "many"},
        {"IMSETMIND_MAX_PRODUCT": "0"},
        {"IMSETMIND_OUTPUT": "json"},
        {"IMSETMIND_LOG_LEVEL": "loud"},
    ],
)
def test_invalid_environment(environ):
    with pytest.raises(ConfigError):
        RunConfig.from_env(environ)


def test_override_skips_none():
    config = RunConfig().override(max_universe=4, output=None)
    assert config.max_universe == 4
    assert config.output == "text"
    with pytest.raises(ConfigError):
        RunConfig().override(max_triangulations=-1)
