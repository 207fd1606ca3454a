"""Acceptance suite: one test per primary criterion, at pinned tolerances.

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line
per criterion.  The quantitative bracket on the real public datasets
requires files that must be fetched once with scripts/fetch_datasets.py
(network); everything else runs fully offline from committed fixtures.
"""

import csv
import itertools
import json
import math
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np
import pytest

from molconcepts.chem import DESCRIPTOR_IDS, compute_descriptor, parse_smiles
from molconcepts.data_io import load_dataset, load_split
from molconcepts.labeling import LabelTable
from molconcepts.metrics import accuracy, auc_roc, pearson_r, rmse
from molconcepts.models import (
    fit_linear,
    fit_logistic,
    fit_mlp,
    fit_tree,
    init_parameters,
    intervene,
    load_model,
    log_likelihood,
    loss_and_gradients,
)
from molconcepts.pipeline import RunConfig, run_pipeline
from molconcepts.selection import aic_of_subset, aic_stepwise, rfe

ROOT = Path(__file__).resolve().parents[1]

TARGET_ITERATION3_CONCEPTS = {
    "Molecular Weight", "# Hydrogen Bond Donors", "TPSA", "# Rotatable Bonds",
}

BRACKET_DESCRIPTORS = [
    "molecular_weight", "tpsa", "num_h_bond_donors", "num_h_bond_acceptors",
    "num_rotatable_bonds", "num_rings", "num_aromatic_rings", "logp",
    "heavy_atom_count",
]


@contextmanager
def criterion(name: str, budget_seconds: float | None = None):
    start = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"[ACCEPTANCE] {name}: FAIL")
        raise
    elapsed = time.monotonic() - start
    if budget_seconds is not None and elapsed > budget_seconds:
        print(f"[ACCEPTANCE] {name}: FAIL (runtime {elapsed:.1f}s "
              f"> {budget_seconds}s)")
        pytest.fail(f"{name} exceeded runtime budget: {elapsed:.1f}s")
    print(f"[ACCEPTANCE] {name}: PASS ({elapsed:.1f}s)")


def _demo_config(name: str, run_dir: Path) -> RunConfig:
    data = json.loads((ROOT / "configs" / f"{name}.json").read_text())
    for key in ("dataset", "split", "transcripts"):
        data[key] = str(ROOT / data[key])
    data["run_dir"] = str(run_dir)
    return RunConfig.from_dict(data)


@pytest.fixture(scope="module")
def freesolv_run(tmp_path_factory):
    run_dir = tmp_path_factory.mktemp("acc") / "freesolv_run"
    reports = run_pipeline(_demo_config("freesolv_demo", run_dir))
    return run_dir, reports


@pytest.fixture(scope="module")
def bbbp_run(tmp_path_factory):
    run_dir = tmp_path_factory.mktemp("acc") / "bbbp_run"
    reports = run_pipeline(_demo_config("bbbp_demo", run_dir))
    return run_dir, reports


@pytest.fixture(scope="module")
def esol_run(tmp_path_factory):
    run_dir = tmp_path_factory.mktemp("acc") / "esol_run"
    reports = run_pipeline(_demo_config("esol_demo", run_dir))
    return run_dir, reports


# --- criterion 1: descriptor oracle agreement --------------------------------

def test_descriptor_oracle_agreement():
    with criterion("descriptor oracle agreement", budget_seconds=5.0):
        path = ROOT / "data" / "fixtures" / "descriptor_golden.csv"
        with path.open() as handle:
            rows = list(csv.DictReader(
                line for line in handle if not line.startswith("#")))
        assert len(rows) >= 200
        for row in rows:
            mol = parse_smiles(row["smiles"])
            for descriptor in DESCRIPTOR_IDS:
                expected = float(row[descriptor])
                actual = compute_descriptor(mol, descriptor)
                if descriptor in ("molecular_weight", "tpsa"):
                    assert math.isclose(actual, expected, abs_tol=0.01), \
                        (row["name"], descriptor)
                elif descriptor == "logp":
                    assert math.isclose(actual, expected, abs_tol=0.05), \
                        (row["name"], descriptor)
                else:
                    assert actual == expected, (row["name"], descriptor)


# --- criterion 2: strategy-3 quantitative bracket -----------------------------

def _tool_matrix(dataset):
    X = np.array([
        [compute_descriptor(parse_smiles(row.smiles), d)
         for d in BRACKET_DESCRIPTORS]
        for row in dataset.rows])
    return X


def _bracket_rmse(dataset_path, split_path, predictor):
    dataset = load_dataset(dataset_path, "regression")
    split = load_split(split_path, len(dataset))
    X = _tool_matrix(dataset)
    train, valid, test = (list(split.train.indices), list(split.valid.indices),
                          list(split.test.indices))
    y_train = split.read_targets(dataset, split.train)
    y_valid = split.read_targets(dataset, split.valid)
    y_test = split.read_targets(dataset, split.test)
    if predictor == "linear":
        model = fit_linear(X[train], y_train, columns=BRACKET_DESCRIPTORS)
    else:
        # hyperparameters are unpinned upstream: pick the seed by validation
        candidates = [fit_mlp(X[train], y_train, columns=BRACKET_DESCRIPTORS,
                              seed=seed) for seed in (0, 1, 2)]
        model = min(candidates,
                    key=lambda m: rmse(y_valid, m.predict(X[valid])))
    return rmse(y_test, model.predict(X[test]))


def test_strategy3_quantitative_bracket():
    needed = [
        ROOT / "data" / "freesolv.csv",
        ROOT / "data" / "esol.csv",
        ROOT / "data" / "splits" / "freesolv_ogb.json",
        ROOT / "data" / "splits" / "esol_ogb.json",
    ]
    missing = [str(p.relative_to(ROOT)) for p in needed if not p.exists()]
    if missing:
        print("[ACCEPTANCE] strategy-3 quantitative bracket: FAIL "
              "(blocked: real dataset files absent)")
        pytest.fail(
            "The quantitative bracket needs the real public datasets and "
            f"their scaffold splits; missing: {missing}. This environment "
            "has no network route to fetch them. Run "
            "`python scripts/fetch_datasets.py` on a machine with network "
            "access, commit/copy the produced files, and re-run. "
            "See notes in data/README.md.")
    with criterion("strategy-3 quantitative bracket", budget_seconds=120.0):
        freesolv_linear = _bracket_rmse(needed[0], needed[2], "linear")
        assert freesolv_linear <= 3.6, freesolv_linear
        esol_linear = _bracket_rmse(needed[1], needed[3], "linear")
        assert esol_linear <= 1.2, esol_linear
        freesolv_mlp = _bracket_rmse(needed[0], needed[2], "mlp")
        assert freesolv_mlp <= 2.6, freesolv_mlp


# --- criterion 3: selector oracles ---------------------------------------------

def test_selector_oracles():
    with criterion("selector oracles", budget_seconds=30.0):
        rng = np.random.default_rng(42)
        for trial in range(50):
            p = int(rng.integers(2, 9))
            n = 60
            X = rng.normal(size=(n, p))
            beta = np.zeros(p)
            k_true = int(rng.integers(1, p + 1))
            beta[:k_true] = rng.normal(1.0, 0.5, size=k_true)
            y = X @ beta + rng.normal(0, 0.5, size=n)
            greedy = aic_stepwise(X, y, direction="both")
            best = min(
                aic_of_subset(X, y, list(subset))
                for size in range(1, p + 1)
                for subset in itertools.combinations(range(p), size))
            gap = greedy.score - best
            assert gap >= -1e-9  # greedy can never beat the enumeration
            if gap > 1e-9:
                print(f"  aic greedy gap on trial {trial}: {gap:.4f}")
            assert gap <= 2.0 + 1e-9, f"trial {trial}: greedy gap {gap}"

        hits = 0
        for trial in range(50):
            rng_trial = np.random.default_rng(1000 + trial)
            informative = rng_trial.normal(size=(120, 2))
            noise = rng_trial.normal(size=(120, 1))
            y = (informative @ np.array([2.0, -2.0])
                 + rng_trial.normal(0, 0.5, 120) > 0).astype(float)
            X = np.hstack([informative, noise])
            result = rfe(X, y, columns=["a", "b", "noise"], target_count=2)
            if "noise" in result.dropped and "round 1" in result.dropped["noise"]:
                hits += 1
        assert hits >= 48, f"noise column eliminated first in only {hits}/50"


# --- criterion 4: predictor numerics -------------------------------------------

def test_predictor_numerics():
    with criterion("predictor numerics", budget_seconds=60.0):
        rng = np.random.default_rng(7)

        # OLS vs normal equations
        for _ in range(5):
            X = rng.normal(size=(25, 3))
            y = rng.normal(size=25)
            model = fit_linear(X, y)
            design = np.hstack([np.ones((25, 1)), X])
            beta = np.linalg.solve(design.T @ design, design.T @ y)
            assert np.max(np.abs(model.predict(X) - design @ beta)) <= 1e-8

        # logistic log-likelihood vs long-run gradient descent
        X = rng.normal(size=(50, 2))
        y = (X @ np.array([1.0, -2.0]) + rng.normal(0, 1.0, 50) > 0).astype(float)
        model = fit_logistic(X, y)
        Z = model.standardization.transform(X)
        design = np.hstack([np.ones((50, 1)), Z])
        beta = np.zeros(3)
        for _ in range(200000):
            prob = 1.0 / (1.0 + np.exp(-design @ beta))
            beta += 0.05 * design.T @ (y - prob) / 50
        z = design @ beta
        oracle = float(np.sum(y * z - np.logaddexp(0.0, z)))
        assert abs(log_likelihood(model, X, y) - oracle) <= 1e-6

        # CART vs exhaustive splits at depth <= 2
        from test_models_tree import assert_same_tree, exhaustive_tree
        for trial in range(20):
            Xt = rng.normal(size=(30, 2)).round(2)
            criterion_name = "gini" if trial % 2 == 0 else "mse"
            if criterion_name == "gini":
                yt = (Xt[:, 0] - Xt[:, 1] + rng.normal(0, 0.3, 30) > 0).astype(float)
            else:
                yt = (Xt @ np.array([1.0, -1.0]) + rng.normal(0, 0.2, 30)).round(2)
            model = fit_tree(Xt, yt, max_depth=2, criterion=criterion_name,
                             min_samples_leaf=1)
            assert_same_tree(model.root,
                             exhaustive_tree(Xt, yt, criterion_name, 2))

        # MLP analytic gradients vs central differences, every layer
        from test_models_mlp import central_difference_gradients
        Zg = rng.normal(size=(5, 3))
        for task, targets in (("regression", rng.normal(size=5)),
                              ("classification",
                               rng.integers(0, 2, 5).astype(float))):
            params = init_parameters(3, 4, seed=3)
            params = (params[0], params[1] + 0.05, params[2], 0.1)
            _, analytic = loss_and_gradients(params, Zg, targets, task)
            numeric = central_difference_gradients(params, Zg, targets, task)
            for a, n in zip(analytic, numeric):
                a, n = np.asarray(a, float), np.asarray(n, float)
                scale = np.maximum(np.maximum(np.abs(a), np.abs(n)), 1e-8)
                assert np.max(np.abs(a - n) / scale) <= 1e-5


# --- criterion 5: metric oracles -------------------------------------------------

def test_metric_oracles():
    with criterion("metric oracles"):
        from test_metrics import brute_force_auc
        rng = np.random.default_rng(9)
        for _ in range(100):
            n = int(rng.integers(4, 40))
            y = rng.integers(0, 2, n)
            if y.min() == y.max():
                y[0] = 1 - y[0]
            scores = np.round(rng.normal(size=n), 1)  # induce ties
            assert auc_roc(y, scores) == brute_force_auc(y, scores)

        for _ in range(25):
            n = int(rng.integers(2, 30))
            a = rng.normal(size=n)
            b = rng.normal(size=n)
            direct_rmse = math.sqrt(sum((x - z) ** 2 for x, z in zip(a, b)) / n)
            assert abs(rmse(a, b) - direct_rmse) <= 1e-12
            labels = rng.integers(0, 2, n)
            predictions = rng.integers(0, 2, n)
            direct_accuracy = sum(int(x == z) for x, z in
                                  zip(labels, predictions)) / n
            assert abs(accuracy(labels, predictions) - direct_accuracy) <= 1e-12
            if n >= 3:
                a = a + np.linspace(0, 1, n)  # ensure non-constant
                mx, my = a.mean(), b.mean()
                cov = float(((a - mx) * (b - my)).sum())
                denominator = math.sqrt(float(((a - mx) ** 2).sum())
                                        * float(((b - my) ** 2).sum()))
                if denominator > 0:
                    assert abs(pearson_r(a, b) - cov / denominator) <= 1e-12


# --- criterion 6: replay determinism ---------------------------------------------

def _tree_bytes(root: Path) -> dict:
    return {str(p.relative_to(root)): p.read_bytes()
            for p in sorted(root.rglob("*")) if p.is_file()}


def test_replay_determinism(freesolv_run, tmp_path):
    with criterion("replay determinism + iteration-3 concepts"):
        run_dir, reports = freesolv_run
        first = _tree_bytes(run_dir)

        # identical config, second execution, same run directory target
        config = _demo_config("freesolv_demo", run_dir)
        run_pipeline(config)
        second = _tree_bytes(run_dir)
        assert first.keys() == second.keys()
        different = [name for name in first if first[name] != second[name]]
        assert not different, f"files differ across runs: {different[:5]}"

        assert set(reports[-1].kept_concepts) == TARGET_ITERATION3_CONCEPTS


# --- criterion 7: explainability signs --------------------------------------------

def test_explainability_signs(freesolv_run, bbbp_run, esol_run):
    with criterion("explainability signs + intervention monotonicity"):
        run_dir, _ = freesolv_run
        linear = load_model(run_dir / "iteration_03" / "models" / "linear.json")
        coefficients = dict(zip(linear.columns, linear.coefficients))
        assert coefficients["# Hydrogen Bond Donors [tool]"] < 0
        assert coefficients["TPSA [tool]"] < 0
        assert coefficients["# Rotatable Bonds [tool]"] > 0

        bbbp_dir, _ = bbbp_run
        logistic = load_model(bbbp_dir / "iteration_01" / "models" / "linear.json")
        coefficients = dict(zip(logistic.columns, logistic.coefficients))
        assert coefficients["logP [tool]"] > 0
        assert coefficients["# Hydrogen Bond Acceptors [tool]"] < 0

        esol_dir, _ = esol_run
        mlp = load_model(esol_dir / "iteration_01" / "models" / "mlp.json")
        table = LabelTable.from_csv(esol_dir / "iteration_01" / "label_table.csv")
        with (ROOT / "data" / "esol_demo.csv").open() as handle:
            ids = {r["name"]: r["molecule_id"] for r in csv.DictReader(handle)}
        base_row = table.row(ids["diphenylamine"], list(mlp.columns))
        position = list(mlp.columns).index("logP [tool]")
        mean = mlp.standardization.means[position]
        std = mlp.standardization.stds[position]
        # the published endpoints are standardized logP values
        grid = [z * std + mean for z in np.linspace(0.209, 0.484, 12)]
        sweep = intervene(mlp, base_row, "logP [tool]", grid)
        predictions = [p for _, p in sweep]
        increasing = all(b >= a for a, b in zip(predictions, predictions[1:]))
        decreasing = all(b <= a for a, b in zip(predictions, predictions[1:]))
        assert increasing or decreasing, predictions
