import csv
import io
import json
from pathlib import Path

import numpy as np
import pytest

from molconcepts.cli import main
from molconcepts.models import fit_linear, save_model

ROOT = Path(__file__).resolve().parents[1]


def invoke(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_descriptors_single_smiles(capsys):
    code, out, _ = invoke(capsys, "descriptors", "c1ccccc1")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["smiles"] == "c1ccccc1"
    assert float(rows[0]["tpsa"]) == 0.0


def test_descriptors_partial_failure(tmp_path, capsys):
    path = tmp_path / "molecules.smi"
    path.write_text("CCO\nnot_a_smiles((\n")
    code, out, _ = invoke(capsys, "descriptors", str(path), "--file")
    assert code == 0  # one row succeeded
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0]["error"] == ""
    assert rows[1]["error"] != ""


def test_descriptors_all_failed(tmp_path, capsys):
    path = tmp_path / "molecules.smi"
    path.write_text("zz((\n")
    code, _, err = invoke(capsys, "descriptors", str(path), "--file")
    assert code == 1
    assert "ERROR" in err


def test_descriptors_catalog(capsys):
    code, out, _ = invoke(capsys, "descriptors", "--catalog")
    assert code == 0
    catalog = json.loads(out)
    assert any(entry["id"] == "tpsa" and entry["unit"] == "Å²"
               for entry in catalog)
    assert len(catalog) >= 12


def _write_config(tmp_path, **overrides):
    dataset = tmp_path / "data.csv"
    dataset.write_text("molecule_id,smiles,name,target\n"
                       "m0,CCO,ethanol,-5.0\n"
                       "m1,c1ccccc1,benzene,-0.9\n"
                       "m2,CCCCO,butanol,-4.7\n")
    split = tmp_path / "split.json"
    split.write_text(json.dumps({"train": [0], "valid": [1], "test": [2]}))
    transcripts = tmp_path / "transcripts.jsonl"
    transcripts.write_text("")
    config = {
        "dataset": str(dataset), "split": str(split), "task": "regression",
        "task_description": "demo", "run_dir": str(tmp_path / "run"),
        "iterations": 1, "strategies": [3], "predictors": ["linear"],
        "transport": "replay", "transcripts": str(transcripts),
    }
    config.update(overrides)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config))
    return path


def test_run_missing_dataset_is_config_error(tmp_path, capsys):
    config = _write_config(tmp_path, dataset=str(tmp_path / "nope.csv"))
    code, _, err = invoke(capsys, "run", str(config))
    assert code == 2
    assert err.startswith("ERROR ConfigError:")


def test_run_zero_iterations_is_config_error(tmp_path, capsys):
    config = _write_config(tmp_path, iterations=0)
    code, _, err = invoke(capsys, "run", str(config))
    assert code == 2
    assert "ConfigError" in err


def test_run_replay_empty_cache_is_cache_miss(tmp_path, capsys):
    config = _write_config(tmp_path)
    code, _, err = invoke(capsys, "run", str(config))
    assert code == 1
    assert err.startswith("ERROR CacheMiss:")


def test_print_effective_config(tmp_path, capsys):
    config = _write_config(tmp_path)
    code, out, _ = invoke(capsys, "run", str(config),
                          "--print-effective-config")
    assert code == 0
    effective = json.loads(out)
    assert effective["iterations"] == 1
    assert effective["tree_max_depth"] == 3  # defaults surfaced


def test_label_tool_only(tmp_path, capsys):
    config = _write_config(tmp_path)
    concepts = tmp_path / "concepts.json"
    concepts.write_text(json.dumps(
        [{"name": "Molecular Weight"}, {"name": "TPSA"}]))
    out_dir = tmp_path / "labels"
    code, out, _ = invoke(capsys, "label", str(config), str(concepts),
                          "-o", str(out_dir))
    assert code == 0
    rows = list(csv.reader((out_dir / "label_table.csv").open()))
    assert len(rows) == 4  # header + 3 molecules
    assert rows[0][1] == "Molecular Weight [tool] (g/mol)"
    assert all(cell != "" for row in rows[1:] for cell in row)
    assert (out_dir / "provenance.json").exists()


def test_intervene_and_report_round_trip(tmp_path, capsys):
    rng = np.random.default_rng(0)
    X = rng.normal(size=(20, 2))
    y = X @ np.array([1.0, -1.0])
    model = fit_linear(X, y, columns=["A [tool]", "B [tool]"])
    model_path = tmp_path / "model.json"
    save_model(model, model_path)

    table_path = tmp_path / "table.csv"
    with table_path.open("w") as handle:
        handle.write("molecule_id,A [tool] (count),B [tool] (count)\n")
        handle.write("m0,1.0,2.0\n")

    out_csv = tmp_path / "intervention.csv"
    code, out, _ = invoke(capsys, "intervene", str(model_path),
                          "--table", str(table_path), "--row-id", "m0",
                          "--concept", "A [tool]", "--grid", "0.209:0.484:5",
                          "-o", str(out_csv))
    assert code == 0
    rows = list(csv.reader(out_csv.open()))
    assert len(rows) == 6  # header + 5 grid points

    code, _, err = invoke(capsys, "intervene", str(model_path),
                          "--table", str(table_path), "--row-id", "m0",
                          "--concept", "Nope", "--grid", "1:2:3",
                          "-o", str(out_csv))
    assert code == 1
    assert "SchemaMismatch" in err

    report_dir = tmp_path / "report"
    code, out, _ = invoke(capsys, "report", str(model_path),
                          "-o", str(report_dir))
    assert code == 0
    assert (report_dir / "coefficients.csv").exists()


def test_full_demo_run_via_cli(capsys, tmp_path):
    """End-to-end on the committed ESOL demo fixtures."""
    source = json.loads((ROOT / "configs" / "esol_demo.json").read_text())
    for key in ("dataset", "split", "transcripts"):
        source[key] = str(ROOT / source[key])
    source["run_dir"] = str(tmp_path / "run")
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(source))
    code, out, _ = invoke(capsys, "run", str(config_path))
    assert code == 0
    assert "iteration 1" in out
    assert (tmp_path / "run" / "iteration_01" / "report.json").exists()
