import json
import os
import subprocess
import sys

import pytest

import wellnet
from wellnet import cli
from wellnet.network import load_network

pytestmark = pytest.mark.filterwarnings("ignore::wellnet.exceptions.TuningWarning")

FAST = ["--therm", "50", "--sweeps", "100", "--measure-every", "5", "--nt", "64"]


def run(args, out_dir):
    return cli.main(list(args) + ["--out-dir", str(out_dir)])


def test_simulate_writes_report_and_traces(tmp_path, capsys):
    code = run(["simulate", wellnet.data_file("two_neurons.json"), *FAST, "--seed", "7"], tmp_path)
    assert code == 0
    rep = json.loads((tmp_path / "report.json").read_text())
    assert rep["metadata"]["seed"] == 7
    assert rep["metadata"]["preset"] == "desk"
    assert rep["schema_version"] == 1
    assert {r["id"] for r in rep["per_neuron"]} == {"in", "n1"}
    trace = (tmp_path / "trace_n1.csv").read_text().splitlines()
    assert trace[0] == "# schema_version: 1"
    assert "slice,mean_V0" in trace
    assert len(trace) == 4 + 1 + 64
    assert "activity" in capsys.readouterr().out


def test_simulate_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    for d in (a, b):
        assert run(["simulate", wellnet.data_file("two_neurons.json"), *FAST, "--seed", "7"], d) == 0
    for name in ("report.json", "trace_n1.csv", "trace_in.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_missing_file_exit_1(tmp_path, capsys):
    assert run(["simulate", str(tmp_path / "nope.json")], tmp_path) == 1
    assert "error" in capsys.readouterr().err


def test_malformed_json_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema_version": 1,\n "neurons": [}\n')
    assert run(["simulate", str(bad)], tmp_path) == 1
    assert "line 2, column" in capsys.readouterr().err


def test_invalid_network_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema_version": 1, "neurons": [{"id": "a"}], "connections": [
        {"kind": "excitatory", "source": "a", "target": "n9", "strength": 5000}]}))
    assert run(["simulate", str(bad)], tmp_path) == 1
    assert "n9" in capsys.readouterr().err


def test_runtime_failure_exit_2(tmp_path, monkeypatch, capsys):
    def boom(*a, **k):
        raise RuntimeError("disk on fire")
    monkeypatch.setattr(cli, "run_simulation", boom)
    assert run(["simulate", wellnet.data_file("two_neurons.json")], tmp_path) == 2
    assert "disk on fire" in capsys.readouterr().err


def test_sweep_csv_rows(tmp_path):
    code = run(["sweep", "--builder", "chain3", "--param", "k", "--grid", "0.2", "1.4", "7",
                "--target", "n3", *FAST], tmp_path)
    assert code == 0
    lines = [ln for ln in (tmp_path / "sweep.csv").read_text().splitlines() if not ln.startswith("#")]
    assert lines[0] == "parameter_value,activity_mean,activity_err,kink_count_mean,acceptance_l0"
    assert [float(ln.split(",")[0]) for ln in lines[1:]] == pytest.approx([0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4])


def test_single_value_sweep_matches_simulate(tmp_path):
    from wellnet.builders import build_pair
    from wellnet.network import modulate, serialize_network
    from wellnet.sampler import derive_seed
    net = tmp_path / "pair.json"
    net.write_text(serialize_network(build_pair()))
    assert run(["sweep", "--network", str(net), "--param", "k", "--values", "0.5",
                "--target", "n1", "--seed", "3", *FAST], tmp_path / "s") == 0
    row = (tmp_path / "s" / "sweep.csv").read_text().splitlines()[-1].split(",")
    mod = tmp_path / "mod.json"
    mod.write_text(serialize_network(modulate(build_pair(), 0.5)))
    child = str(derive_seed(3, 0))
    assert run(["simulate", str(mod), "--seed", child, *FAST], tmp_path / "m") == 0
    rep = json.loads((tmp_path / "m" / "report.json").read_text())
    n1 = next(r for r in rep["per_neuron"] if r["id"] == "n1")
    assert float(row[1]) == n1["activity_mean"]


def test_sweep_bad_plan_exit_1(tmp_path):
    assert run(["sweep", "--builder", "chain3", "--param", "k", "--values", "1,x",
                "--target", "n3", *FAST], tmp_path) == 1
    assert run(["sweep", "--builder", "chain3", "--param", "k", "--values", "1",
                "--target", "n7", *FAST], tmp_path) == 1


def test_gate_export_and_summary(tmp_path, capsys):
    export = tmp_path / "and.json"
    assert run(["gate", "and", "--inputs", "on,off", "--export", str(export), *FAST], tmp_path) == 0
    out = capsys.readouterr().out
    assert "gate AND" in out and "n3" in out
    net = load_network(export)
    assert net.neuron("in_b").kind.value == "input_passive"
    assert net.lattice.n_slices == 64


def test_gate_not_reports_both(tmp_path, capsys):
    assert run(["gate", "not", "--k", "0", *FAST], tmp_path) == 0
    out = capsys.readouterr().out
    assert "n1:" in out and "n2:" in out


def test_unknown_gate_and_bad_inputs_exit_1(tmp_path):
    assert run(["gate", "xor", *FAST], tmp_path) == 1
    assert run(["gate", "and", "--inputs", "on", *FAST], tmp_path) == 1


def test_conv(tmp_path, capsys):
    assert run(["conv", wellnet.data_file("images/blank.txt"), *FAST], tmp_path) == 0
    assert "no-line" in capsys.readouterr().out
    bad = tmp_path / "img.txt"
    bad.write_text("0101\n01\n")
    assert run(["conv", str(bad)], tmp_path) == 1
    assert run(["conv", str(tmp_path / "missing.txt")], tmp_path) == 1


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "wellnet", "gate", "or", "--inputs", "on,off",
                           *FAST, "--out-dir", str(tmp_path)],
                          capture_output=True, text=True, env={**os.environ, "PYTHONWARNINGS": "ignore"})
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "report.json").exists()
