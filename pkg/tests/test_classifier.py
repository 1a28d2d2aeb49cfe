import logging

import numpy as np
import pytest

from touristwalk.classifier import (ClassifierError, LabeledSample, LdaModel, lda_fit,
                                    ledoit_wolf_intensity, loocv, pca_project)


def blobs(rng, per_class=20, d=5, sep=4.0, labels=("regular", "random", "small_world")):
    out = []
    for c, lab in enumerate(labels):
        centre = np.zeros(d)
        centre[c % d] = sep
        for i in range(per_class):
            out.append(LabeledSample(centre + rng.standard_normal(d), lab, f"{lab}{i}"))
    return out


def textbook_decision(X, y, Xte, alpha, reg=0.0):
    """Full d x d shared-covariance discriminant, written out directly."""
    classes = np.unique(y)
    n, d = X.shape
    means = np.array([X[y == c].mean(axis=0) for c in classes])
    Z = X - means[np.searchsorted(classes, y)]
    S = Z.T @ Z / (n - len(classes))
    scale = np.trace(S) / d
    cov = (1 - alpha) * S + alpha * scale * np.eye(d) + reg * scale * np.eye(d)
    inv = np.linalg.inv(cov)
    prior = np.array([(y == c).mean() for c in classes])
    return Xte @ inv @ means.T - 0.5 * np.einsum("kd,de,ke->k", means, inv, means) + np.log(prior)


def test_ledoit_wolf_matches_sklearn(rng):
    covariance = pytest.importorskip("sklearn.covariance")
    for n, d in ((30, 5), (20, 80), (200, 10)):
        Z = rng.standard_normal((n, d)) * rng.uniform(0.5, 3, d)
        Z -= Z.mean(axis=0)
        _, expected = covariance.ledoit_wolf(Z, assume_centered=True)
        assert ledoit_wolf_intensity(Z) == pytest.approx(expected, rel=1e-9)


@pytest.mark.parametrize("d", [4, 60])
def test_span_solve_equals_full_solve(rng, d):
    data = blobs(rng, per_class=8, d=d)
    X = np.vstack([s.features for s in data])
    y = np.array([s.label for s in data])
    model = LdaModel(shrinkage=0.3).fit(X, y)
    Xte = rng.standard_normal((10, d)) * 3
    np.testing.assert_allclose(model.decision_function(Xte),
                               textbook_decision(X, y, Xte, 0.3), rtol=1e-8, atol=1e-8)


def test_ridge_path_matches_textbook(rng):
    data = blobs(rng, per_class=15, d=6)
    X = np.vstack([s.features for s in data])
    y = np.array([s.label for s in data])
    model = LdaModel(shrinkage=None, reg=1e-6).fit(X, y)
    assert model.reg_used_ == 1e-6
    Xte = rng.standard_normal((5, 6))
    np.testing.assert_allclose(model.decision_function(Xte),
                               textbook_decision(X, y, Xte, 0.0, reg=1e-6), rtol=1e-8)


def test_ridge_escalates_then_gives_up(rng):
    x = rng.standard_normal(30)
    X = np.column_stack([x, x])                     # rank one
    y = np.repeat(["a", "b", "c"], 10)
    X[y == "b"] += 1.0
    model = LdaModel(shrinkage=None, reg=1e-6, max_cond=1e3).fit(X, y)
    assert model.reg_used_ == pytest.approx(1e-2)
    with pytest.raises(ClassifierError):
        LdaModel(shrinkage=None, reg=1e-6, max_cond=10).fit(X, y)


def test_lda_predicts_and_needs_two_classes(rng):
    train = blobs(rng, 30)
    model = lda_fit(train)
    X = np.vstack([s.features for s in train])
    assert (model.predict(X) == np.array([s.label for s in train])).mean() > 0.95
    assert 0.0 <= model.shrinkage_ <= 1.0
    with pytest.raises(ClassifierError):
        LdaModel().fit(X[:5], ["a"] * 5)


def test_loocv_separable(rng):
    rep = loocv(blobs(rng, 20, sep=8.0))
    assert rep.accuracy_mean == 100.0 and rep.accuracy_std == 0.0
    assert rep.labels == ["regular", "random", "small_world"]
    assert np.trace(rep.confusion) == 60 and rep.n_samples == 60
    assert rep.to_dict()["std_blocks"] == 10


def test_loocv_block_std(rng):
    data = blobs(rng, 20, sep=1.0)
    rep = loocv(data)
    assert 0 < rep.accuracy_mean < 100
    assert np.sum(rep.confusion) == 60
    assert rep.accuracy_std > 0


def test_loocv_skips_vanishing_class(rng, caplog):
    data = blobs(rng, 10, sep=6.0, labels=("a", "b"))
    data.append(LabeledSample(np.ones(5), "lonely", "x"))
    with caplog.at_level(logging.WARNING):
        rep = loocv(data)
    assert rep.skipped == 1 and rep.n_samples == 20
    assert "skipped" in caplog.text


def test_loocv_input_errors(rng):
    with pytest.raises(ClassifierError):
        loocv(blobs(rng, 5, labels=("only",)))
    bad = blobs(rng, 5)
    bad[0] = LabeledSample(np.zeros(3), "regular")
    with pytest.raises(ClassifierError):
        loocv(bad)
    with pytest.raises(ClassifierError):
        loocv([])


def test_standardize_is_fitted_per_fold(rng):
    data = blobs(rng, 15, sep=3.0)
    for s in data:
        s.features = s.features * np.array([1e6, 1, 1, 1e-6, 1])
    rep = loocv(data, standardize=True)
    assert rep.standardized and rep.accuracy_mean > 80


def test_pca_against_sklearn(rng):
    decomposition = pytest.importorskip("sklearn.decomposition")
    X = rng.standard_normal((40, 6)) @ rng.standard_normal((6, 6))
    X = np.column_stack([X, np.full(40, 3.0)])     # constant column is dropped
    coords, explained = pca_project(X, dims=2)
    ref = decomposition.PCA(2).fit(X[:, :6])
    np.testing.assert_allclose(explained, ref.explained_variance_ratio_, rtol=1e-9)
    np.testing.assert_allclose(np.abs(coords), np.abs(ref.transform(X[:, :6])), atol=1e-9)


def test_pca_sign_convention(rng):
    X = rng.standard_normal((30, 4))
    coords, _ = pca_project(X)
    coords_neg, _ = pca_project(-X)
    np.testing.assert_allclose(coords, -coords_neg, atol=1e-12)
    with pytest.raises(ClassifierError):
        pca_project(np.ones((10, 3)))
