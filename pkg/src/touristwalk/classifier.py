"""Linear discriminant analysis, leave-one-out evaluation and PCA projection."""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

import numpy as np

log = logging.getLogger(__name__)

LABELS = ("regular", "random", "small_world")


class ClassifierError(ValueError):
    pass


@dataclass
class LabeledSample:
    features: np.ndarray
    label: str
    sample_id: str = ""
    provenance: Optional[dict] = None


def _as_arrays(samples):
    if not samples:
        raise ClassifierError("no samples")
    widths = {np.asarray(s.features).shape[0] for s in samples}
    if len(widths) != 1:
        raise ClassifierError(f"samples have mixed feature lengths {sorted(widths)}")
    X = np.vstack([np.asarray(s.features, dtype=np.float64) for s in samples])
    y = np.array([s.label for s in samples])
    return X, y


def ledoit_wolf_intensity(Z):
    """Ledoit-Wolf shrinkage weight for rows ``Z`` (already centred).

    Optimal ``a`` in ``(1 - a) S + a * (tr(S) / d) I`` with ``S = Z'Z / n``,
    computed through the ``n x n`` Gram matrix so wide data stays cheap.
    """
    n, d = Z.shape
    G = Z @ Z.T
    s_sq = float((G ** 2).sum()) / n ** 2
    mu = float(np.trace(G)) / n / d
    delta = (s_sq - 2 * mu * float(np.trace(G)) / n + d * mu ** 2) / d
    if delta <= 0:
        return 1.0
    beta = (float((np.diag(G) ** 2).sum()) - n * s_sq) / n ** 2 / d
    return min(max(beta, 0.0), delta) / delta


class LdaModel:
    """Shared-covariance Gaussian discriminant on a regularised pooled covariance.

    ``shrinkage="auto"`` (default) blends the pooled covariance ``S`` with
    ``(tr(S)/d) I`` at the Ledoit-Wolf weight. ``shrinkage=None`` uses the
    plain ridge ``S + reg * (tr(S)/d) I``. If the result is still
    ill-conditioned the ridge ``reg`` is raised by decades up to ``max_reg``.

    Fitting works in the span of the centred training rows and the class
    means; this gives the same discriminants as the full ``d x d`` solve
    and keeps wide signature vectors cheap.
    """

    def __init__(self, shrinkage="auto", reg=1e-6, max_reg=1e-2, max_cond=1e12):
        self.shrinkage = shrinkage
        self.reg = reg
        self.max_reg = max_reg
        self.max_cond = max_cond

    def fit(self, X, y):
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y)
        self.classes_ = np.unique(y)
        n, d = X.shape
        K = self.classes_.shape[0]
        if K < 2:
            raise ClassifierError("need at least two classes to fit")
        codes = np.searchsorted(self.classes_, y)
        counts = np.bincount(codes, minlength=K)
        means = np.vstack([X[codes == c].mean(axis=0) for c in range(K)])
        Z = X - means[codes]
        dof = n - K if n > K else n
        scale = float(np.einsum("ij,ij->", Z, Z)) / dof / d
        if scale == 0.0:
            scale = 1.0
        if self.shrinkage == "auto":
            alpha = ledoit_wolf_intensity(Z)
        else:
            alpha = float(self.shrinkage or 0.0)
        self.shrinkage_ = alpha

        if d > n + K:
            Q, _ = np.linalg.qr(np.vstack([Z, means]).T)
        else:
            Q = np.eye(d)
        Zq = Z @ Q
        Mq = means @ Q
        S = (1.0 - alpha) * (Zq.T @ Zq) / dof + alpha * scale * np.eye(Q.shape[1])
        reg = self.reg if alpha == 0.0 else 0.0
        while True:
            A = S + reg * scale * np.eye(S.shape[0])
            cond = np.linalg.cond(A)
            if np.isfinite(cond) and cond <= self.max_cond:
                break
            reg = self.reg if reg == 0.0 else reg * 10
            if reg > self.max_reg * (1 + 1e-9):
                raise ClassifierError(
                    f"pooled covariance singular: cond={cond:.3g} "
                    f"(d={d}, n={n}, shrinkage={alpha:.3g}, scale={scale:.3g})")
        self.reg_used_ = reg
        self.basis_ = Q
        self.coef_ = np.linalg.solve(A, Mq.T).T  # (K, r)
        self.intercept_ = -0.5 * np.einsum("kr,kr->k", Mq, self.coef_) + np.log(counts / n)
        return self

    def decision_function(self, X):
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        return (X @ self.basis_) @ self.coef_.T + self.intercept_

    def predict(self, X):
        return self.classes_[np.argmax(self.decision_function(X), axis=1)]


def lda_fit(train: Sequence[LabeledSample], shrinkage="auto", reg=1e-6) -> LdaModel:
    X, y = _as_arrays(train)
    return LdaModel(shrinkage=shrinkage, reg=reg).fit(X, y)


@dataclass
class EvaluationReport:
    accuracy_mean: float
    accuracy_std: float
    confusion: List[List[int]]
    labels: List[str]
    n_samples: int
    skipped: int = 0
    std_blocks: int = 10
    standardized: bool = False
    shrinkage: str = "auto"
    notes: List[str] = field(default_factory=list)

    def to_dict(self):
        return asdict(self)


def _standardize(train, test):
    mu = train.mean(axis=0)
    sd = train.std(axis=0)
    sd[sd == 0] = 1.0
    return (train - mu) / sd, (test - mu) / sd


def loocv(samples: Sequence[LabeledSample], shrinkage="auto", reg=1e-6, standardize=False,
          std_blocks=10, labels: Optional[Sequence[str]] = None) -> EvaluationReport:
    """Leave-one-out accuracy of LDA over ``samples``.

    ``accuracy_std`` is the standard deviation, in percent, of accuracy over
    ``std_blocks`` contiguous blocks of the per-sample hit/miss sequence.
    A held-out sample whose class is absent from the remaining data is
    skipped and counted.
    """
    X, y = _as_arrays(samples)
    n = X.shape[0]
    present = np.unique(y)
    if n < 3 or present.shape[0] < 2:
        raise ClassifierError(f"need >= 3 samples and >= 2 classes, got {n} and {present.shape[0]}")
    labels = list(labels) if labels is not None else (
        [l for l in LABELS if l in present] + sorted(set(present) - set(LABELS)))
    index = {l: i for i, l in enumerate(labels)}
    confusion = np.zeros((len(labels), len(labels)), dtype=np.int64)
    hits = []
    skipped = 0
    for i in range(n):
        mask = np.arange(n) != i
        if y[i] not in y[mask]:
            skipped += 1
            continue
        Xtr, Xte = X[mask], X[i:i + 1]
        if standardize:
            Xtr, Xte = _standardize(Xtr, Xte)
        pred = LdaModel(shrinkage=shrinkage, reg=reg).fit(Xtr, y[mask]).predict(Xte)[0]
        confusion[index[y[i]], index[pred]] += 1
        hits.append(pred == y[i])
    if skipped:
        log.warning("%d held-out samples skipped: their class vanished from training", skipped)
    hits = np.array(hits, dtype=np.float64)
    blocks = [b.mean() * 100 for b in np.array_split(hits, min(std_blocks, hits.shape[0])) if b.size]
    return EvaluationReport(
        accuracy_mean=float(hits.mean() * 100),
        accuracy_std=float(np.std(blocks)),
        confusion=confusion.tolist(),
        labels=labels,
        n_samples=int(hits.shape[0]),
        skipped=skipped,
        std_blocks=len(blocks),
        standardized=standardize,
        shrinkage=str(shrinkage),
    )


def pca_project(samples, dims=2):
    """Project onto the top ``dims`` principal axes.

    Zero-variance features are dropped first. Each axis is signed so its
    largest-magnitude loading is positive. Returns ``(coords, explained)``
    with ``explained`` the variance fraction per axis.
    """
    X = _as_arrays(samples)[0] if not isinstance(samples, np.ndarray) else np.asarray(samples, float)
    X = X[:, X.std(axis=0) > 0]
    if X.shape[1] < dims:
        raise ClassifierError(f"{X.shape[1]} varying features, cannot project to {dims}")
    Xc = X - X.mean(axis=0)
    _, sv, vt = np.linalg.svd(Xc, full_matrices=False)
    axes = vt[:dims]
    flip = np.sign(axes[np.arange(dims), np.argmax(np.abs(axes), axis=1)])
    axes = axes * flip[:, None]
    var = sv ** 2
    return Xc @ axes.T, var[:dims] / var.sum()
