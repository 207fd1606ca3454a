import numpy as np
import pytest

from molconcepts.models import (
    LinearModel,
    fit_linear,
    intervene,
    model_from_dict,
    residual_sum_of_squares,
)
from molconcepts.errors import SchemaMismatch


def normal_equations(X, y):
    """Independent OLS oracle on the raw design with explicit intercept."""
    design = np.hstack([np.ones((len(y), 1)), X])
    return np.linalg.solve(design.T @ design, design.T @ y)


def test_exact_line():
    model = fit_linear(np.array([[1.0], [2.0], [3.0]]), np.array([2.0, 4.0, 6.0]))
    assert model.predict(np.array([[4.0]]))[0] == pytest.approx(8.0, abs=1e-9)


def test_matches_normal_equations_oracle():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(20, 3))
    y = rng.normal(size=20)
    model = fit_linear(X, y)
    beta = normal_equations(X, y)
    predicted = model.predict(X)
    oracle_pred = np.hstack([np.ones((20, 1)), X]) @ beta
    assert np.max(np.abs(predicted - oracle_pred)) <= 1e-8


def test_residual_orthogonality():
    rng = np.random.default_rng(1)
    X = rng.normal(size=(40, 4))
    y = rng.normal(size=40)
    model = fit_linear(X, y)
    Z = model.standardization.transform(X)
    residuals = y - model.predict(X)
    assert np.max(np.abs(Z.T @ residuals)) <= 1e-8


def test_affine_rescaling_invariance():
    rng = np.random.default_rng(2)
    X = rng.normal(size=(30, 3))
    y = rng.normal(size=30)
    base = fit_linear(X, y).predict(X)
    X2 = X.copy()
    X2[:, 1] = 5.0 * X2[:, 1] - 7.0
    rescaled = fit_linear(X2, y).predict(X2)
    assert np.max(np.abs(base - rescaled)) <= 1e-8


def test_duplicate_column_dropped_with_refit():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(25, 1))
    X = np.hstack([x, x])  # second column is dependent
    y = 3.0 * x[:, 0] + rng.normal(0, 0.01, size=25)
    model = fit_linear(X, y, columns=["a", "b"])
    assert model.dropped_dependent == ("b",)
    solo = fit_linear(x, y)
    assert np.max(np.abs(model.predict(X) - solo.predict(x))) <= 1e-8


def test_zero_variance_column_flagged():
    X = np.array([[1.0, 5.0], [2.0, 5.0], [3.0, 5.0], [4.0, 5.0]])
    y = np.array([1.0, 2.0, 3.0, 4.0])
    model = fit_linear(X, y)
    assert model.standardization.zero_variance == (1,)
    assert model.coefficients[1] == 0.0


def test_zero_coefficients_predict_intercept():
    model = LinearModel(["a"], fit_linear(np.array([[1.0], [2.0]]),
                                          np.array([0.0, 0.0])).standardization,
                        [0.0], 1.5)
    assert np.allclose(model.predict(np.array([[10.0], [-3.0]])), 1.5)


def test_rss_helper():
    X = np.array([[1.0], [2.0], [3.0]])
    y = np.array([2.0, 4.0, 6.0])
    model = fit_linear(X, y)
    assert residual_sum_of_squares(model, X, y) == pytest.approx(0.0, abs=1e-16)


def test_serialization_round_trip():
    rng = np.random.default_rng(4)
    X = rng.normal(size=(12, 2))
    y = rng.normal(size=12)
    model = fit_linear(X, y, columns=["tpsa", "logp"])
    clone = model_from_dict(model.to_dict())
    assert np.allclose(model.predict(X), clone.predict(X))
    assert clone.columns == ("tpsa", "logp")


def test_intervene_identity_and_linearity():
    rng = np.random.default_rng(5)
    X = rng.normal(size=(30, 2))
    y = X @ np.array([2.0, -1.0]) + 0.5
    model = fit_linear(X, y, columns=["a", "b"])
    base = X[0]
    same = intervene(model, base, "a", [base[0]])
    assert same[0][1] == pytest.approx(model.predict(base.reshape(1, -1))[0])

    sweep = intervene(model, base, "a", [0.0, 1.0, 2.0])
    sigma = model.standardization.stds[0]
    coef = model.coefficients[0]
    for (v1, p1), (v2, p2) in zip(sweep, sweep[1:]):
        assert p2 - p1 == pytest.approx(coef * (v2 - v1) / sigma, rel=1e-9)


def test_intervene_schema_mismatch():
    X = np.array([[1.0], [2.0], [3.0]])
    model = fit_linear(X, np.array([1.0, 2.0, 3.0]), columns=["a"])
    with pytest.raises(SchemaMismatch):
        intervene(model, X[0], "missing", [1.0])
    with pytest.raises(SchemaMismatch):
        model.predict(np.ones((2, 3)))


def test_standardization_invariant():
    from molconcepts.models import Standardization

    rng = np.random.default_rng(6)
    X = rng.normal(loc=5.0, scale=3.0, size=(40, 4))
    X[:, 2] = 7.0  # degenerate column
    standardization = Standardization.fit(X)
    Z = standardization.transform(X)
    live = [0, 1, 3]
    assert np.max(np.abs(Z[:, live].mean(axis=0))) <= 1e-9
    assert np.max(np.abs(Z[:, live].std(axis=0) - 1.0)) <= 1e-9
    assert standardization.zero_variance == (2,)
    assert np.allclose(Z[:, 2], 0.0)
