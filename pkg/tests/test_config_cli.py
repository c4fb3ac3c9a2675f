import json
import subprocess
import sys

import numpy as np
import pytest
import yaml
from hypothesis import given
from hypothesis import strategies as st

from ringstar import cli
from ringstar import config as cfgio
from ringstar.errors import ConfigError
from ringstar.network import NetworkConfig
from ringstar.neuron import NeuronParams, original_step

SMALL = {
    "n_nodes": 12, "r_neighbors": 2, "sigma0": -0.005, "mu0": 0.0005,
    "d_sigma": 0.1, "d_mu": 0.1, "p_sigma": 0.7, "p_mu": 0.5,
    "n_total": 400, "n_transient": 200, "seed": 4,
}


def write_yaml(path, doc):
    path.write_text(yaml.safe_dump(doc))
    return str(path)


def test_missing_field_names_the_path(tmp_path):
    doc = dict(SMALL)
    del doc["n_nodes"]
    with pytest.raises(ConfigError) as exc:
        cfgio.network_from_dict(doc)
    assert "n_nodes" in str(exc.value)
    assert cli.main(["simulate", "--config", write_yaml(tmp_path / "c.yaml", doc), "--out", str(tmp_path / "o")]) == 3


def test_nested_error_path():
    doc = {"axis1": {"name": "sigma0", "lo": 0, "hi": 1, "count": 1}, "base": SMALL}
    with pytest.raises(ConfigError) as exc:
        cfgio.sweep_from_dict(doc)
    assert "axis1" in str(exc.value) and "count" in str(exc.value)


def test_unknown_key_rejected():
    with pytest.raises(ConfigError):
        cfgio.network_from_dict({**SMALL, "sigma": 0.1})


@given(
    st.floats(-0.01, 0.01), st.floats(-0.001, 0.001), st.floats(0, 1), st.floats(0, 1),
    st.floats(-1, 4), st.integers(0, 2**63),
)
def test_network_round_trip(sigma0, mu0, p_sigma, p_mu, k, seed):
    cfg = NetworkConfig(sigma0=sigma0, mu0=mu0, p_sigma=p_sigma, p_mu=p_mu, seed=seed, neuron=NeuronParams(k=k))
    text = cfgio.dump(cfg, "simulate")
    assert cfgio.network_from_dict(yaml.safe_load(text)) == cfg


@pytest.mark.parametrize("name", cfgio.preset_names())
def test_presets_load_and_round_trip(name):
    doc = cfgio.read_document(name)
    if "axis1" in doc:
        kind = "sweep"
    elif "n_nodes" in doc:
        kind = "simulate"
    else:
        kind = "single-neuron"
    obj = cfgio.load(name, kind)
    assert cfgio.LOADERS[kind](yaml.safe_load(cfgio.dump(obj, kind))) == obj


def test_simulate_outputs_are_byte_identical(tmp_path):
    cfg = cfgio.network_from_dict(SMALL)
    a, b = tmp_path / "a", tmp_path / "b"
    cli.simulate(cfg, a, emit_trajectory=True, plots=False)
    cli.simulate(cfg, b, emit_trajectory=True, plots=False)
    for name in ("metrics.json", "gamma.csv", "spatial_average.csv", "last_instance.csv",
                 "recurrence.csv", "trajectory_x.csv", "trajectory_y.csv", "trajectory_phi.csv", "config.yaml"):
        assert (a / name).read_bytes() == (b / name).read_bytes(), name
    assert cfgio.load(str(a / "config.yaml"), "simulate") == cfg


def test_simulate_writes_panels(tmp_path):
    cfg = cfgio.network_from_dict(SMALL)
    manifest = cli.simulate(cfg, tmp_path, plots=True)
    pngs = {p.name for p in tmp_path.glob("*.png")}
    assert {"phase_portrait.png", "gamma.png", "spatiotemporal.png", "last_instance.png", "recurrence.png"} <= pngs
    assert set(manifest.artifacts) >= {"metrics.json", "gamma.csv"}
    rows = (tmp_path / "gamma.csv").read_text().splitlines()
    assert rows[0] == "node,gamma,label" and len(rows) == 13
    assert rows[2].split(",")[1:] == ["1", "Coherent"]
    metrics = json.loads((tmp_path / "metrics.json").read_text())
    assert sum(metrics["counts"].values()) == 12


def test_single_neuron_without_flux_matches_original_map(tmp_path):
    cfg = cfgio.single_from_dict({"neuron": {"k": 0.0}, "n_transient": 100, "n_sample": 1000})
    cli.single_neuron(cfg, tmp_path, plots=False)
    data = np.loadtxt(tmp_path / "trajectory.csv", delimiter=",", skiprows=1)
    x, y = 0.5, 1.0
    for _ in range(100):
        x, y = original_step(x, y, cfg.neuron)
    for row in data[:200]:
        x, y = original_step(x, y, cfg.neuron)
        assert (row[1], row[2]) == (x, y)
    report = json.loads((tmp_path / "report.json").read_text())
    assert set(report) >= {"sample_entropy", "lambda_max", "lyapunov_spectrum"}


def test_sweep_smoke_files(tmp_path):
    assert cli.main(["sweep", "--config", "smoke_3x3", "--out", str(tmp_path), "--threads", "1"]) == 0
    for metric in ("gamma_avg", "sync_error", "solitary_fraction", "sample_entropy", "diverged"):
        assert (tmp_path / f"{metric}.csv").exists()
        assert (tmp_path / f"{metric}.png").exists() or metric == "diverged"
    header = (tmp_path / "gamma_avg.csv").read_text().splitlines()[0]
    assert header == "sigma0\\mu0,-0.001,0,0.001"
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["cells"] == 9 and summary["valid"] + summary["diverged"] == 9
    for key in ("E_vs_gamma", "SE_vs_E", "SE_vs_gamma"):
        assert (tmp_path / f"scatter_{key}.csv").exists()
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["complete"] and manifest["command"] == "sweep"


def test_one_dimensional_sweep_writes_bifurcation(tmp_path):
    doc = {"axis1": {"name": "k", "lo": -1.0, "hi": 1.0, "count": 3}, "base": SMALL}
    path = write_yaml(tmp_path / "s.yaml", doc)
    out = tmp_path / "o"
    assert cli.main(["sweep", "--config", path, "--out", str(out), "--threads", "1", "--no-plots"]) == 0
    rows = (out / "bifurcation.csv").read_text().splitlines()
    assert rows[0] == "k,node,x_last" and len(rows) == 1 + 3 * 12
    assert (out / "gamma_avg.csv").read_text().splitlines()[0] == "k,gamma_avg"


def test_json_format(tmp_path):
    assert cli.main(["simulate", "--config", write_yaml(tmp_path / "c.yaml", SMALL), "--out", str(tmp_path / "o"),
                     "--format", "json", "--no-plots", "--seed", "9"]) == 0
    g = json.loads((tmp_path / "o" / "gamma.json").read_text())
    assert len(g["gamma"]) == 12
    assert json.loads((tmp_path / "o" / "manifest.json").read_text())["seed"] == 9


def test_divergence_exit_code(tmp_path):
    doc = {**SMALL, "neuron": {"k": 40.0}}
    assert cli.main(["simulate", "--config", write_yaml(tmp_path / "c.yaml", doc),
                     "--out", str(tmp_path / "o"), "--no-plots"]) == 4


def test_info_commands(capsys):
    assert cli.main(["presets"]) == 0
    assert "smoke_3x3" in capsys.readouterr().out
    assert cli.main(["schema", "simulate"]) == 0
    schema = json.loads(capsys.readouterr().out)
    assert "n_nodes" in schema["required"]


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "ringstar", "presets"], capture_output=True, text=True, check=True)
    assert "fig6_sigma0_mu0" in out.stdout
