import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from molconcepts.errors import ConstantVector, LengthMismatch, SingleClass
from molconcepts.metrics import (
    accuracy,
    auc_roc,
    fraction_high_correlation,
    pearson_r,
    rmse,
)


def brute_force_auc(y, scores):
    """Quadratic pair-counting oracle, ties count one half."""
    wins = 0.0
    pairs = 0
    for yi, si in zip(y, scores):
        if yi != 1:
            continue
        for yj, sj in zip(y, scores):
            if yj != 0:
                continue
            pairs += 1
            if si > sj:
                wins += 1.0
            elif si == sj:
                wins += 0.5
    return wins / pairs


def test_rmse_trivial():
    assert rmse([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == 0.0
    assert rmse([0.0, 0.0], [3.0, 4.0]) == pytest.approx(math.sqrt(12.5), abs=1e-12)


def test_rmse_oracle():
    rng = np.random.default_rng(7)
    y_true = rng.normal(size=7)
    y_pred = rng.normal(size=7)
    direct = math.sqrt(sum((a - b) ** 2 for a, b in zip(y_true, y_pred)) / 7)
    assert abs(rmse(y_true, y_pred) - direct) <= 1e-12


@given(st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=30),
       st.floats(-1e3, 1e3))
def test_rmse_constant_shift(values, shift):
    y = np.array(values)
    assert rmse(y, y + shift) == pytest.approx(abs(shift), rel=1e-9, abs=1e-9)


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        rmse([1.0], [1.0, 2.0])
    with pytest.raises(LengthMismatch):
        accuracy([], [])


def test_accuracy_cases():
    assert accuracy([1, 0, 1], [1, 0, 1]) == 1.0
    assert accuracy([1, 0], [0, 1]) == 0.0
    assert accuracy([1] * 7 + [0] * 3, [1] * 10) == pytest.approx(0.7)


def test_auc_trivial():
    assert auc_roc([0, 0, 1, 1], [0.1, 0.2, 0.8, 0.9]) == 1.0
    assert auc_roc([0, 1, 0, 1], [0.5, 0.5, 0.5, 0.5]) == 0.5


def test_auc_single_class():
    with pytest.raises(SingleClass):
        auc_roc([1, 1, 1], [0.1, 0.2, 0.3])


def test_auc_matches_pair_counting():
    rng = np.random.default_rng(11)
    for _ in range(100):
        n = rng.integers(4, 30)
        y = rng.integers(0, 2, size=n)
        if y.min() == y.max():
            y[0] = 1 - y[0]
        scores = rng.choice([0.1, 0.25, 0.5, 0.5, 0.9], size=n) + \
            rng.normal(0, 0.05, size=n).round(2)
        assert auc_roc(y, scores) == brute_force_auc(y, scores)


def test_auc_monotone_transform_invariance():
    rng = np.random.default_rng(3)
    y = rng.integers(0, 2, size=40)
    y[0], y[1] = 0, 1
    scores = rng.normal(size=40)
    base = auc_roc(y, scores)
    for transform in (lambda s: 2 * s + 1, np.exp, lambda s: s ** 3):
        assert auc_roc(y, transform(scores)) == pytest.approx(base, abs=1e-12)


def test_pearson_trivial():
    x = [1.0, 2.0, 4.0, 8.0]
    assert pearson_r(x, x) == pytest.approx(1.0, abs=1e-12)
    assert pearson_r(x, [-v for v in x]) == pytest.approx(-1.0, abs=1e-12)


def test_pearson_oracle():
    rng = np.random.default_rng(5)
    x = rng.normal(size=6)
    y = rng.normal(size=6)
    mx, my = x.mean(), y.mean()
    cov = ((x - mx) * (y - my)).sum()
    direct = cov / math.sqrt(((x - mx) ** 2).sum() * ((y - my) ** 2).sum())
    assert abs(pearson_r(x, y) - direct) <= 1e-12


def test_pearson_constant_vector():
    with pytest.raises(ConstantVector):
        pearson_r([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])


def test_fraction_high_correlation():
    assert fraction_high_correlation([0.9, 0.5, 0.8]) == pytest.approx(2 / 3)
    assert fraction_high_correlation([]) == 0.0
    assert fraction_high_correlation([0.7, 0.99, 1.0]) == 1.0


def test_permutation_invariance():
    rng = np.random.default_rng(13)
    y = rng.integers(0, 2, size=25)
    y[:2] = [0, 1]
    scores = rng.normal(size=25)
    perm = rng.permutation(25)
    assert auc_roc(y, scores) == pytest.approx(auc_roc(y[perm], scores[perm]), abs=1e-12)
    preds = (scores > 0).astype(int)
    assert accuracy(y, preds) == accuracy(y[perm], preds[perm])
