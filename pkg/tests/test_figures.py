import json
import math

import pytest

from qsteg import figures
from qsteg.figures import ExperimentConfig


def test_grid():
    assert figures.grid(0.5, 5.0, 0.5) == [0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0]
    assert len(figures.grid(0.0, 1.0, 0.01)) == 101
    assert figures.parse_grid("2") == [2.0]
    for bad in ("1:2", "2:1:0.1", "0:1:0"):
        with pytest.raises(ValueError):
            figures.parse_grid(bad)


@pytest.mark.parametrize("name", ["fig1", "fig3", "fig7"])
def test_outputs_are_byte_identical(name):
    cfg = dict(command=name, n_bar_grid=[0.5, 1.5], samples=2000, seed=5)
    if name == "fig3":
        cfg["r_c_grid"] = [0.2, 0.4]
    texts = []
    for _ in range(2):
        c = ExperimentConfig(**cfg)
        texts.append(figures.render_table(figures.GENERATORS[name](c), c.metadata(), "csv"))
    assert texts[0] == texts[1]
    lines = texts[0].splitlines()
    assert lines[1].startswith("# ") and '"seed=5' not in lines[1] and "seed=5" in lines[1]
    rows = figures.read_csv_table(texts[0])
    assert len(rows) == (4 if name == "fig3" else 2)


def test_seed_changes_monte_carlo_output():
    def run(seed):
        c = ExperimentConfig("fig3", n_bar_grid=[1.0], samples=2000, seed=seed, r_c_grid=[0.3])
        return figures.GENERATORS["fig3"](c)

    assert run(1) != run(2)


def test_json_round_trip_and_nonfinite():
    recs = [{"n_bar": 1.0, "R_over_K": math.inf}, {"n_bar": 2.0, "R_over_K": 0.5}]
    meta = ExperimentConfig("fig4", n_bar_grid=[1.0, 2.0]).metadata()
    doc = json.loads(figures.render_table(recs, meta, "json"))
    assert doc["metadata"]["figure"] == "fig4"
    assert doc["records"][0]["R_over_K"] == "inf"
    csv_text = figures.render_table(recs, meta, "csv")
    assert figures.read_csv_table(csv_text)[0]["R_over_K"] == "inf"


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig("fig1", samples=0)
    with pytest.raises(ValueError):
        ExperimentConfig("fig1", format="xml")
    assert ExperimentConfig("fig3").n_bar_grid == figures.DEFAULT_NBAR_GRIDS["fig3"]
