"""Classification evaluation: confusion matrices, precision/recall/F1,
one-vs-rest ROC curves and AUC.

Conventions
-----------
* Confusion matrices store rows = actual class, columns = predicted class;
  :meth:`ConfusionMatrix.paper_view` provides the transposed, row-normalized
  orientation some papers plot (rows = predicted).
* Degenerate 0/0 ratios are reported as 0.0 and flagged instead of raising,
  so metric computation never aborts a sweep.
* AUC uses a trapezoidal sweep over tied score groups with the area numerator
  accumulated in exact integer arithmetic; the result equals the
  pairwise-probability estimator (ties counted 1/2) bit for bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import InputError


@dataclass(frozen=True, eq=False)
class ConfusionMatrix:
    """Count matrix with rows = actual class, cols = predicted class."""

    counts: np.ndarray

    def __post_init__(self):
        c = self.counts
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise InputError(f"confusion counts must be square, got {c.shape}")
        if np.any(c < 0):
            raise InputError("confusion counts must be nonnegative")

    @property
    def num_classes(self) -> int:
        return self.counts.shape[0]

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    @property
    def accuracy(self) -> float:
        return float(np.trace(self.counts) / self.total)

    def paper_view(self) -> np.ndarray:
        """Transposed (rows = predicted) and row-normalized rendering."""
        t = self.counts.T.astype(np.float64)
        sums = t.sum(axis=1, keepdims=True)
        return np.divide(t, sums, out=np.zeros_like(t), where=sums > 0)


def confusion(pred_labels, true_labels, num_classes: int) -> ConfusionMatrix:
    """Tally counts[actual][predicted] over paired label vectors."""
    pred = np.asarray(pred_labels, dtype=np.int64)
    true = np.asarray(true_labels, dtype=np.int64)
    if pred.shape != true.shape or pred.ndim != 1:
        raise InputError(
            f"label vectors must match: pred {pred.shape}, true {true.shape}"
        )
    if pred.size == 0:
        raise InputError("cannot build a confusion matrix from zero trials")
    for name, arr in (("pred", pred), ("true", true)):
        if arr.min() < 0 or arr.max() >= num_classes:
            raise InputError(f"{name} labels out of range for K={num_classes}")
    counts = np.zeros((num_classes, num_classes), dtype=np.int64)
    np.add.at(counts, (true, pred), 1)
    return ConfusionMatrix(counts)


@dataclass(frozen=True, eq=False)
class PrfReport:
    """Per-class and averaged precision/recall/F1.

    ``degenerate[k]`` marks classes where any ratio was 0/0 (no predictions
    or no members); those entries hold 0.0.  For single-label data the micro
    averages all equal the accuracy, so one value is reported.
    """

    precision: np.ndarray
    recall: np.ndarray
    f1: np.ndarray
    degenerate: np.ndarray
    macro_precision: float
    macro_recall: float
    macro_f1: float
    micro: float


def prf(cm: ConfusionMatrix) -> PrfReport:
    """Precision/recall/F1 from a confusion matrix, macro and micro averaged."""
    counts = cm.counts.astype(np.float64)
    diag = np.diag(counts)
    col_sums = counts.sum(axis=0)
    row_sums = counts.sum(axis=1)

    degenerate = np.zeros(cm.num_classes, dtype=bool)
    precision = np.zeros(cm.num_classes)
    recall = np.zeros(cm.num_classes)
    f1 = np.zeros(cm.num_classes)
    for k in range(cm.num_classes):
        if col_sums[k] > 0:
            precision[k] = diag[k] / col_sums[k]
        else:
            degenerate[k] = True
        if row_sums[k] > 0:
            recall[k] = diag[k] / row_sums[k]
        else:
            degenerate[k] = True
        if precision[k] + recall[k] > 0:
            f1[k] = 2 * precision[k] * recall[k] / (precision[k] + recall[k])
        else:
            degenerate[k] = True

    # Micro precision and recall coincide at trace/total for single-label
    # multiclass data (every trial contributes one prediction and one truth),
    # hence micro F1 is the same number.
    micro = cm.accuracy
    return PrfReport(
        precision=precision,
        recall=recall,
        f1=f1,
        degenerate=degenerate,
        macro_precision=float(precision.mean()),
        macro_recall=float(recall.mean()),
        macro_f1=float(f1.mean()),
        micro=micro,
    )


@dataclass(frozen=True, eq=False)
class RocCurve:
    """One class-vs-rest ROC: stepwise points and trapezoidal AUC.

    ``defined`` is False when the class has no positives or no negatives; the
    curve is then empty and the AUC is NaN (excluded from the macro average).
    """

    class_index: int
    points: np.ndarray  # (m, 2) columns (fpr, tpr)
    auc: float
    defined: bool


@dataclass(frozen=True, eq=False)
class RocReport:
    curves: list[RocCurve]
    macro_auc: float


def _binary_roc(scores: np.ndarray, positive: np.ndarray) -> tuple[np.ndarray, float]:
    """Stepwise ROC points and exact trapezoidal AUC for one binary problem.

    Equal scores collapse into a single threshold step, which makes the
    trapezoid over that step count tied pairs at 1/2 -- identical to the
    pairwise-probability definition.
    """
    p = int(positive.sum())
    n = positive.size - p
    order = np.argsort(-scores, kind="stable")
    sorted_pos = positive[order]
    sorted_scores = scores[order]
    # Last index of each tied group.
    boundaries = np.flatnonzero(np.diff(sorted_scores) != 0)
    ends = np.append(boundaries, positive.size - 1)
    tp = np.cumsum(sorted_pos)[ends]
    fp = (ends + 1) - tp

    area2 = 0  # twice the area, in units of pair counts (exact integers)
    prev_tp = 0
    prev_fp = 0
    for tpi, fpi in zip(tp.tolist(), fp.tolist()):
        area2 += (fpi - prev_fp) * (tpi + prev_tp)
        prev_tp, prev_fp = tpi, fpi
    auc = area2 / (2 * p * n)

    points = np.empty((ends.size + 1, 2))
    points[0] = (0.0, 0.0)
    points[1:, 0] = fp / n
    points[1:, 1] = tp / p
    return points, float(auc)


def roc_auc(scores, true_labels, num_classes: int) -> RocReport:
    """One-vs-rest ROC and AUC per class plus their macro average.

    ``scores`` is the (n, K) matrix of class probabilities (any monotone
    per-class score works).  Classes missing positives or negatives are
    flagged undefined and left out of the macro AUC.
    """
    s = np.asarray(scores, dtype=np.float64)
    labels = np.asarray(true_labels, dtype=np.int64)
    if s.ndim != 2 or s.shape != (labels.size, num_classes):
        raise InputError(
            f"scores must be (n, {num_classes}), got {s.shape} for "
            f"{labels.size} labels"
        )
    curves = []
    defined_aucs = []
    for k in range(num_classes):
        positive = labels == k
        p = int(positive.sum())
        if p == 0 or p == labels.size:
            curves.append(
                RocCurve(k, np.empty((0, 2)), float("nan"), defined=False)
            )
            continue
        points, auc = _binary_roc(s[:, k], positive)
        curves.append(RocCurve(k, points, auc, defined=True))
        defined_aucs.append(auc)
    macro = float(np.mean(defined_aucs)) if defined_aucs else float("nan")
    return RocReport(curves=curves, macro_auc=macro)


@dataclass(frozen=True, eq=False)
class MetricsReport:
    """Everything the evaluation suite reports for one model on one dataset."""

    confusion: ConfusionMatrix
    prf: PrfReport
    roc: RocReport

    @property
    def accuracy(self) -> float:
        return self.confusion.accuracy

    def to_json_dict(self) -> dict:
        def none_if_nan(x):
            return None if np.isnan(x) else float(x)

        return {
            "accuracy": self.accuracy,
            "confusion_counts": self.confusion.counts.tolist(),
            "per_class": {
                "precision": self.prf.precision.tolist(),
                "recall": self.prf.recall.tolist(),
                "f1": self.prf.f1.tolist(),
                "degenerate": self.prf.degenerate.tolist(),
            },
            "macro": {
                "precision": self.prf.macro_precision,
                "recall": self.prf.macro_recall,
                "f1": self.prf.macro_f1,
            },
            "micro": {
                "precision": self.prf.micro,
                "recall": self.prf.micro,
                "f1": self.prf.micro,
            },
            "roc_points": [
                c.points.tolist() if c.defined else None for c in self.roc.curves
            ],
            "auc": {
                "per_class": [none_if_nan(c.auc) for c in self.roc.curves],
                "macro": none_if_nan(self.roc.macro_auc),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        """Flat summary: metric,class,value with empty class for aggregates."""
        lines = ["metric,class,value"]

        def row(metric, cls, value):
            if value is None or (isinstance(value, float) and np.isnan(value)):
                lines.append(f"{metric},{cls},")
            else:
                lines.append(f"{metric},{cls},{value:.6f}")

        row("accuracy", "", self.accuracy)
        row("macro_precision", "", self.prf.macro_precision)
        row("macro_recall", "", self.prf.macro_recall)
        row("macro_f1", "", self.prf.macro_f1)
        row("macro_auc", "", self.roc.macro_auc)
        row("micro_f1", "", self.prf.micro)
        for k in range(self.confusion.num_classes):
            row("precision", k, self.prf.precision[k])
            row("recall", k, self.prf.recall[k])
            row("f1", k, self.prf.f1[k])
            row("auc", k, self.roc.curves[k].auc)
        return "\n".join(lines) + "\n"


def evaluate(probs, true_labels, num_classes: int) -> MetricsReport:
    """Full report from probability rows: argmax decisions (ties to the
    smaller index), confusion, PRF, ROC/AUC."""
    p = np.asarray(probs, dtype=np.float64)
    pred = p.argmax(axis=1)
    cm = confusion(pred, true_labels, num_classes)
    return MetricsReport(confusion=cm, prf=prf(cm), roc=roc_auc(p, true_labels, num_classes))
