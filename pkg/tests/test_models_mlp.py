import numpy as np
import pytest

from molconcepts.errors import NonFiniteLoss
from molconcepts.models import (
    MlpModel,
    Standardization,
    fit_mlp,
    init_parameters,
    loss_and_gradients,
    model_from_dict,
)


def central_difference_gradients(params, Z, y, task, eps=1e-6):
    arrays = [np.array(p, dtype=float) for p in params]
    grads = []
    for k in range(len(arrays)):
        grad = np.zeros_like(arrays[k])
        iterator = np.nditer(grad, flags=["multi_index"], op_flags=["readwrite"])
        while not iterator.finished:
            idx = iterator.multi_index
            plus = [a.copy() for a in arrays]
            minus = [a.copy() for a in arrays]
            plus[k][idx] += eps
            minus[k][idx] -= eps
            loss_plus, _ = loss_and_gradients(tuple(plus), Z, y, task)
            loss_minus, _ = loss_and_gradients(tuple(minus), Z, y, task)
            grad[idx] = (loss_plus - loss_minus) / (2 * eps)
            iterator.iternext()
        grads.append(grad)
    return grads


@pytest.mark.parametrize("task", ["regression", "classification"])
def test_gradient_check_every_layer(task):
    rng = np.random.default_rng(0)
    Z = rng.normal(size=(5, 3))
    if task == "classification":
        y = rng.integers(0, 2, size=5).astype(float)
    else:
        y = rng.normal(size=5)
    params = init_parameters(3, 4, seed=1)
    # keep pre-activations away from the ReLU kink for clean differences
    params = (params[0], params[1] + 0.05, params[2], 0.1)
    _, analytic = loss_and_gradients(params, Z, y, task)
    numeric = central_difference_gradients(params, Z, y, task)
    for a, n in zip(analytic, numeric):
        a = np.asarray(a, dtype=float)
        n = np.asarray(n, dtype=float)
        scale = np.where(np.maximum(np.abs(a), np.abs(n)) < 1e-8, 1.0,
                         np.maximum(np.abs(a), np.abs(n)))
        assert np.max(np.abs(a - n) / scale) <= 1e-5


def test_xor_learnable():
    X = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
    y = np.array([0.0, 1.0, 1.0, 0.0])
    solved = False
    for seed in (0, 1, 2):
        model = fit_mlp(X, y, hidden_width=4, epochs=5000, learning_rate=0.1,
                        seed=seed, task="classification")
        predictions = (model.predict(X) >= 0.5).astype(float)
        if np.all(predictions == y):
            solved = True
            break
    assert solved


def test_zero_epochs_equals_initial_forward_pass():
    rng = np.random.default_rng(3)
    X = rng.normal(size=(6, 2))
    y = rng.normal(size=6)
    model = fit_mlp(X, y, hidden_width=5, epochs=0, seed=7)
    w1, b1, w2, b2 = init_parameters(2, 5, seed=7)
    standardization = Standardization.fit(X)
    Z = standardization.transform(X)
    manual = np.maximum(Z @ w1 + b1, 0.0) @ w2 + b2
    assert np.allclose(model.predict(X), manual)


def test_divergence_raises_non_finite_loss():
    rng = np.random.default_rng(4)
    X = rng.normal(size=(10, 2)) * 10
    y = rng.normal(size=10) * 10
    with pytest.raises(NonFiniteLoss):
        fit_mlp(X, y, hidden_width=8, epochs=5000, learning_rate=1e4, seed=0)


def test_classifier_outputs_probabilities():
    rng = np.random.default_rng(5)
    X = rng.normal(size=(30, 2))
    y = (X[:, 0] > 0).astype(float)
    model = fit_mlp(X, y, hidden_width=8, epochs=300, learning_rate=0.05,
                    seed=0, task="classification")
    probs = model.predict(X)
    assert np.all(probs >= 0.0) and np.all(probs <= 1.0)


def test_deterministic_given_seed():
    rng = np.random.default_rng(6)
    X = rng.normal(size=(20, 3))
    y = rng.normal(size=20)
    a = fit_mlp(X, y, hidden_width=4, epochs=50, seed=9)
    b = fit_mlp(X, y, hidden_width=4, epochs=50, seed=9)
    assert np.array_equal(a.w1, b.w1) and np.array_equal(a.w2, b.w2)


def test_serialization_round_trip():
    rng = np.random.default_rng(7)
    X = rng.normal(size=(15, 2))
    y = rng.normal(size=15)
    model = fit_mlp(X, y, hidden_width=3, epochs=20, seed=2)
    clone = model_from_dict(model.to_dict())
    assert isinstance(clone, MlpModel)
    assert np.allclose(model.predict(X), clone.predict(X))
