"""Command-line behavior: flag/config layering, outputs, and exit codes."""

import subprocess
import sys

import pytest

import rbfherm.cli as cli
from rbfherm.experiments import read_records
from rbfherm.nodes import NodeSet, halton_disk_nodes


@pytest.fixture
def nodes_csv(tmp_path):
    ns = NodeSet(
        data_nodes=halton_disk_nodes(12, 0.1),
        eval_nodes=halton_disk_nodes(8, 0.1 / 3.0),
        radius=0.1,
        seed=1,
    )
    path = tmp_path / "nodes.csv"
    ns.save(path)
    return path


def run_cli(argv):
    return cli.main([str(a) for a in argv])


def test_help_exits_zero():
    with pytest.raises(SystemExit) as excinfo:
        run_cli(["--help"])
    assert excinfo.value.code == 0


def test_unknown_subcommand_is_an_input_error(capsys):
    assert run_cli(["bogus"]) == 1
    assert "error" in capsys.readouterr().err


def test_missing_subcommand_is_an_input_error():
    assert run_cli([]) == 1


def test_sweep_run_writes_csv(tmp_path, nodes_csv, capsys):
    out = tmp_path / "out"
    code = run_cli(
        ["sweep-eps-n", "--nodes", nodes_csv, "--eps", "1", "--n", "4", "--out", out]
    )
    assert code == 0
    csv_path = out / "eps_n_sweep.csv"
    assert str(csv_path) in capsys.readouterr().out
    metadata, records = read_records(csv_path)
    assert metadata["experiment"] == "eps_n_sweep"
    assert metadata["function"] == "trig"
    assert metadata["kernel"] == "gaussian"
    assert metadata["seed"] == "1"
    assert len(records) == 1
    assert records[0].epsilon == 1.0
    assert records[0].n == 4
    assert records[0].n_nodes == 12


def test_plot_flag_renders_svg_beside_the_csv(tmp_path, nodes_csv):
    out = tmp_path / "out"
    code = run_cli(
        [
            "sweep-eps-n", "--nodes", nodes_csv, "--eps", "0.5,1", "--n", "2,4",
            "--out", out, "--plot",
        ]
    )
    assert code == 0
    svg = (out / "eps_n_sweep.svg").read_text()
    assert svg.startswith("<svg ")


def test_config_file_sets_grids(tmp_path, nodes_csv):
    config = tmp_path / "run.toml"
    config.write_text('eps_grid = 0.5\nn_grid = [2]\nout_dir = "%s"\n' % tmp_path)
    code = run_cli(["sweep-eps-n", "--nodes", nodes_csv, "--config", config])
    assert code == 0
    _, records = read_records(tmp_path / "eps_n_sweep.csv")
    assert [(r.epsilon, r.n) for r in records] == [(0.5, 2)]


def test_flags_beat_the_config_file(tmp_path, nodes_csv):
    config = tmp_path / "run.toml"
    config.write_text("eps_grid = [1.0]\nn_grid = [2]\n")
    code = run_cli(
        [
            "sweep-eps-n", "--nodes", nodes_csv, "--config", config,
            "--eps", "0.5", "--out", tmp_path,
        ]
    )
    assert code == 0
    _, records = read_records(tmp_path / "eps_n_sweep.csv")
    # the flag replaces the file's eps grid; the file's n grid survives
    assert [(r.epsilon, r.n) for r in records] == [(0.5, 2)]


def test_unknown_config_key_fails_cleanly(tmp_path, nodes_csv, capsys):
    config = tmp_path / "run.toml"
    config.write_text("bananas = 1\n")
    assert run_cli(["sweep-eps-n", "--nodes", nodes_csv, "--config", config]) == 1
    assert "unknown config keys" in capsys.readouterr().err


def test_poly_flag_parses_none_entries(tmp_path, nodes_csv):
    code = run_cli(
        [
            "poly-compare", "--nodes", nodes_csv, "--eps", "1",
            "--poly", "none,2", "--out", tmp_path,
        ]
    )
    assert code == 0
    _, records = read_records(tmp_path / "poly_compare.csv")
    assert [r.l for r in records] == [None, 2]


def test_method_compare_runs(tmp_path, nodes_csv):
    code = run_cli(
        ["method-compare", "--nodes", nodes_csv, "--eps", "1", "--out", tmp_path]
    )
    assert code == 0
    _, records = read_records(tmp_path / "method_compare.csv")
    assert [r.method for r in records] == ["hrbf", "mhrbf"]


def test_bad_flag_value_is_an_input_error(tmp_path, nodes_csv):
    assert run_cli(["sweep-eps-n", "--nodes", nodes_csv, "--eps", "abc"]) == 1


def test_missing_nodes_file_is_an_input_error(tmp_path, capsys):
    missing = tmp_path / "nope.csv"
    assert run_cli(["sweep-eps-n", "--nodes", missing, "--eps", "1"]) == 1


def test_gen_nodes_writes_a_loadable_layout(tmp_path, capsys):
    code = run_cli(
        [
            "gen-nodes", "--kind", "disk", "--count", "12", "--eval-count", "8",
            "--radius", "0.1", "--out", tmp_path,
        ]
    )
    assert code == 0
    path = tmp_path / "disk_nodes.csv"
    assert str(path) in capsys.readouterr().out
    loaded = NodeSet.load(path)
    assert loaded.n_data == 12
    assert loaded.n_eval == 8
    assert loaded.radius == 0.1
    assert loaded.kind == "disk"


def test_plot_subcommand(tmp_path, nodes_csv, capsys):
    run_cli(["sweep-eps-n", "--nodes", nodes_csv, "--eps", "1", "--out", tmp_path])
    capsys.readouterr()
    csv_path = tmp_path / "eps_n_sweep.csv"
    assert run_cli(["plot", csv_path]) == 0
    assert (tmp_path / "eps_n_sweep.svg").exists()

    other = tmp_path / "elsewhere"
    other.mkdir()
    assert run_cli(["plot", csv_path, "--out", other]) == 0
    assert (other / "eps_n_sweep.svg").exists()


def test_plot_of_missing_csv_is_an_input_error(tmp_path):
    assert run_cli(["plot", tmp_path / "missing.csv"]) == 1


def test_internal_errors_exit_two(tmp_path, nodes_csv, monkeypatch, capsys):
    def boom(config, node_set=None):
        raise RuntimeError("solver exploded")

    monkeypatch.setattr(cli, "run_experiment", boom)
    assert run_cli(["sweep-eps-n", "--nodes", nodes_csv, "--eps", "1"]) == 2
    assert "internal error" in capsys.readouterr().err


def test_console_script_is_installed():
    proc = subprocess.run(
        [sys.executable, "-c", "from rbfherm.cli import main; raise SystemExit(main(['--help']))"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "sweep-eps-n" in proc.stdout
