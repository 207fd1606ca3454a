import json

import pytest

from molconcepts.data_io import load_dataset, load_split
from molconcepts.errors import IndexOutOfRange, SchemaError


@pytest.fixture
def dataset_csv(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text(
        "molecule_id,smiles,name,target\n"
        "m1,CCO,ethanol,-5.0\n"
        "m2,c1ccccc1,benzene,-0.9\n"
        "m3,CC(C)O,isopropanol,-4.7\n")
    return path


def test_load_dataset_in_file_order(dataset_csv):
    dataset = load_dataset(dataset_csv, "regression")
    assert len(dataset) == 3
    assert [r.molecule_id for r in dataset.rows] == ["m1", "m2", "m3"]
    assert dataset.rows[0].target == -5.0
    assert dataset.rows[1].name == "benzene"


def test_unparseable_smiles_dropped_with_log(tmp_path, caplog):
    path = tmp_path / "data.csv"
    path.write_text("molecule_id,smiles,name,target\n"
                    "ok,CCO,,1.0\n"
                    "bad,notasmiles((,,2.0\n")
    dataset = load_dataset(path, "regression")
    assert len(dataset) == 1
    assert dataset.dropped_ids == ("bad",)


def test_schema_errors(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("id,smiles\nx,CCO\n")
    with pytest.raises(SchemaError):
        load_dataset(path, "regression")
    with pytest.raises(SchemaError):
        load_dataset(tmp_path / "missing.csv", "regression")
    path2 = tmp_path / "dup.csv"
    path2.write_text("molecule_id,smiles,target\nx,CCO,1\nx,CC,2\n")
    with pytest.raises(SchemaError):
        load_dataset(path2, "regression")


def test_classification_targets_must_be_binary(tmp_path):
    path = tmp_path / "data.csv"
    path.write_text("molecule_id,smiles,target\nx,CCO,0.5\n")
    with pytest.raises(SchemaError):
        load_dataset(path, "classification")


def test_split_json_form(tmp_path, dataset_csv):
    split_path = tmp_path / "split.json"
    split_path.write_text(json.dumps(
        {"train": [0], "valid": [1], "test": [2]}))
    split = load_split(split_path, 3)
    assert split.train.indices == (0,)
    assert split.test.role == "test"


def test_split_directory_form(tmp_path):
    split_dir = tmp_path / "split"
    split_dir.mkdir()
    (split_dir / "train.txt").write_text("0\n1\n")
    (split_dir / "valid.txt").write_text("2\n")
    (split_dir / "test.txt").write_text("3\n")
    split = load_split(split_dir, 4)
    assert split.train.indices == (0, 1)
    assert split.valid.indices == (2,)


def test_split_index_out_of_range(tmp_path):
    split_path = tmp_path / "split.json"
    split_path.write_text(json.dumps({"train": [0], "valid": [1], "test": [5]}))
    with pytest.raises(IndexOutOfRange):
        load_split(split_path, 3)


def test_split_overlap_rejected(tmp_path):
    split_path = tmp_path / "split.json"
    split_path.write_text(json.dumps({"train": [0, 1], "valid": [1], "test": [2]}))
    with pytest.raises(SchemaError):
        load_split(split_path, 3)


def test_split_role_tagged_target_reads(tmp_path, dataset_csv):
    split_path = tmp_path / "split.json"
    split_path.write_text(json.dumps({"train": [0], "valid": [1], "test": [2]}))
    dataset = load_dataset(dataset_csv, "regression")
    split = load_split(split_path, 3)
    split.read_targets(dataset, split.train)
    split.read_targets(dataset, split.valid)
    assert split.test_target_reads == 0
    split.read_targets(dataset, split.test)
    assert split.test_target_reads == 1
