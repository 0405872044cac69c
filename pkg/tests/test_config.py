import pytest
from pydantic import ValidationError

from errors import ConfigError
from experiments.config import MAX_SEED, ExperimentConfig


def test_defaults():
    cfg = ExperimentConfig()
    assert cfg.family == "rs"
    assert (cfg.field_order, cfg.n, cfg.k) == (16, 15, 5)
    assert cfg.sweep == [] and cfg.out is None


def test_from_text():
    text = "# hadamard run\nfamily = hadamard\nk = 6   # bits\n\nsweep = 0.1, 0.2\nseed = 12\n"
    cfg = ExperimentConfig.from_text(text)
    assert cfg.family == "hadamard"
    assert cfg.k == 6
    assert cfg.sweep == [0.1, 0.2]
    assert cfg.seed == 12


def test_overrides_win_and_none_is_ignored():
    cfg = ExperimentConfig.from_text("seed = 3\nformat = json\n", seed=9, format=None)
    assert cfg.seed == 9
    assert cfg.format == "json"


def test_text_round_trip():
    cfg = ExperimentConfig.build(family="gv", n=24, k=4, d=4, sweep=[0.1, 0.25], seed=MAX_SEED, out="r.csv")
    text = cfg.to_text()
    assert "decode_radius" not in text
    assert "sweep = 0.1,0.25" in text
    assert ExperimentConfig.from_text(text) == cfg


def test_from_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("family = concat\nouter_n = 4\nouter_k = 2\n")
    cfg = ExperimentConfig.from_file(path, seed=5)
    assert (cfg.family, cfg.outer_n, cfg.seed) == ("concat", 4, 5)


def test_config_is_frozen():
    cfg = ExperimentConfig()
    with pytest.raises(ValidationError):
        cfg.k = 3


@pytest.mark.parametrize(
    "text",
    [
        "family rs\n",
        "colour = blue\n",
        "k = -1\n",
        "family = bch\n",
        "n = 20\n",
        "k = 16\n",
        "family = hadamard\nk = 21\n",
        "family = concat\nouter_n = 5\n",
        "family = systematic\nfield_order = 7\nt = 7\n",
        "sweep_param = errors\nsweep = 1, 1.5\n",
        "sweep = 0.2, 1.0\n",
        "sweep = low, high\n",
        f"seed = {MAX_SEED + 1}\n",
        "eps = 0.5\n",
    ],
)
def test_invalid_configs_raise_config_error(text):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_text(text)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        ExperimentConfig.from_file(tmp_path / "absent.cfg")
