"""Metric tests against direct counting and the exhaustive pairwise oracle."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eegaug.errors import InputError
from eegaug.metrics import confusion, evaluate, prf, roc_auc

from oracles import pair_count_auc


class TestConfusion:
    def test_perfect_balanced(self):
        labels = np.repeat([0, 1, 2], 4)
        cm = confusion(labels, labels, 3)
        np.testing.assert_array_equal(cm.counts, np.diag([4, 4, 4]))
        assert cm.accuracy == 1.0
        assert cm.total == 12

    def test_all_predicted_class_zero(self):
        true = np.array([0, 0, 1, 2, 1, 0])
        pred = np.zeros(6, dtype=int)
        cm = confusion(pred, true, 3)
        assert cm.counts[:, 1:].sum() == 0
        np.testing.assert_array_equal(cm.counts[:, 0], [3, 2, 1])
        assert cm.accuracy == pytest.approx(3 / 6)

    def test_direct_count_example(self):
        true = np.array([0, 0, 0, 1, 1, 1])
        pred = np.array([0, 1, 0, 1, 1, 0])
        cm = confusion(pred, true, 2)
        np.testing.assert_array_equal(cm.counts, [[2, 1], [1, 2]])
        assert cm.accuracy == pytest.approx(4 / 6)

    def test_accuracy_is_trace_over_total(self):
        rng = np.random.default_rng(0)
        true = rng.integers(0, 4, size=100)
        pred = rng.integers(0, 4, size=100)
        cm = confusion(pred, true, 4)
        assert cm.accuracy == np.trace(cm.counts) / cm.total

    def test_length_mismatch(self):
        with pytest.raises(InputError):
            confusion(np.array([0, 1]), np.array([0]), 2)

    def test_paper_view_is_row_normalized_transpose(self):
        cm = confusion(np.array([0, 1, 0]), np.array([0, 0, 1]), 2)
        view = cm.paper_view()
        np.testing.assert_allclose(view.sum(axis=1), [1.0, 1.0])
        np.testing.assert_allclose(view[0], [0.5, 0.5])  # predicted-0 row


class TestPrf:
    def test_symmetric_two_class(self):
        cm = confusion(
            np.array([0, 1, 0, 1, 1, 0]), np.array([0, 0, 0, 1, 1, 1]), 2
        )
        report = prf(cm)
        np.testing.assert_allclose(report.precision, [2 / 3, 2 / 3])
        np.testing.assert_allclose(report.recall, [2 / 3, 2 / 3])
        np.testing.assert_allclose(report.f1, [2 / 3, 2 / 3])
        assert not report.degenerate.any()

    def test_perfect_diagonal(self):
        labels = np.repeat([0, 1, 2], 3)
        report = prf(confusion(labels, labels, 3))
        np.testing.assert_allclose(report.precision, 1.0)
        np.testing.assert_allclose(report.recall, 1.0)
        np.testing.assert_allclose(report.f1, 1.0)
        assert report.macro_f1 == 1.0

    def test_unpredicted_class_flagged_zero(self):
        # class 2 never predicted and never present
        true = np.array([0, 0, 1, 1])
        pred = np.array([0, 1, 1, 1])
        report = prf(confusion(pred, true, 3))
        assert report.degenerate[2]
        assert report.precision[2] == 0.0
        assert report.recall[2] == 0.0

    def test_micro_equals_accuracy(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            k = int(rng.integers(2, 6))
            n = int(rng.integers(5, 60))
            true = rng.integers(0, k, size=n)
            pred = rng.integers(0, k, size=n)
            cm = confusion(pred, true, k)
            assert prf(cm).micro == cm.accuracy


class TestRocAuc:
    def test_perfect_ranking(self):
        scores = np.array([[0.9, 0.1], [0.8, 0.2], [0.3, 0.7], [0.1, 0.9]])
        labels = np.array([0, 0, 1, 1])
        report = roc_auc(scores, labels, 2)
        assert report.curves[0].auc == 1.0
        assert report.curves[1].auc == 1.0
        assert report.macro_auc == 1.0

    def test_all_scores_tied_gives_half(self):
        scores = np.full((10, 2), 0.5)
        labels = np.array([0, 1] * 5)
        report = roc_auc(scores, labels, 2)
        assert report.curves[0].auc == 0.5
        assert report.curves[1].auc == 0.5

    def test_pair_counting_example(self):
        # positives {0.9, 0.4}, negatives {0.6, 0.1}: pairs won
        # (0.9,0.6), (0.9,0.1), (0.4,0.1); lost (0.4,0.6); no ties -> 3/4.
        score_pos = np.array([0.9, 0.4, 0.6, 0.1])
        labels = np.array([1, 1, 0, 0])
        scores = np.column_stack([1 - score_pos, score_pos])
        report = roc_auc(scores, labels, 2)
        oracle = pair_count_auc(score_pos, labels == 1)
        assert oracle == 3 / 4
        assert report.curves[1].auc == oracle

    def test_curve_anchors_and_monotonicity(self):
        rng = np.random.default_rng(8)
        scores = rng.random((50, 3))
        scores /= scores.sum(axis=1, keepdims=True)
        labels = rng.integers(0, 3, size=50)
        report = roc_auc(scores, labels, 3)
        for curve in report.curves:
            assert curve.defined
            np.testing.assert_allclose(curve.points[0], [0.0, 0.0])
            np.testing.assert_allclose(curve.points[-1], [1.0, 1.0])
            assert np.all(np.diff(curve.points[:, 0]) >= 0)
            assert np.all(np.diff(curve.points[:, 1]) >= 0)

    def test_missing_class_flagged_and_excluded(self):
        scores = np.array([[0.5, 0.3, 0.2], [0.2, 0.6, 0.2], [0.1, 0.2, 0.7]])
        labels = np.array([0, 1, 0])  # class 2 absent
        report = roc_auc(scores, labels, 3)
        assert not report.curves[2].defined
        assert np.isnan(report.curves[2].auc)
        defined = [c.auc for c in report.curves if c.defined]
        assert report.macro_auc == pytest.approx(np.mean(defined))

    def test_matches_pair_counting_exactly_on_random_problems(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            n = int(rng.integers(4, 200))
            # quantized scores force plenty of ties
            pos_scores = np.round(rng.random(n), 1)
            labels = rng.integers(0, 2, size=n)
            if labels.min() == labels.max():
                labels[0] = 1 - labels[0]
            scores = np.column_stack([1 - pos_scores, pos_scores])
            report = roc_auc(scores, labels, 2)
            oracle = pair_count_auc(pos_scores, labels == 1)
            assert report.curves[1].auc == oracle

    def test_permutation_invariance(self):
        rng = np.random.default_rng(23)
        scores = rng.random((40, 2))
        labels = rng.integers(0, 2, size=40)
        perm = rng.permutation(40)
        a = roc_auc(scores, labels, 2)
        b = roc_auc(scores[perm], labels[perm], 2)
        assert a.curves[0].auc == b.curves[0].auc
        assert a.curves[1].auc == b.curves[1].auc


@settings(max_examples=120, deadline=None)
@given(
    data=st.lists(
        st.tuples(st.integers(0, 9), st.booleans()), min_size=2, max_size=200
    )
)
def test_auc_equals_pairwise_probability_property(data):
    scores = np.array([s / 9 for s, _ in data])
    positive = np.array([p for _, p in data])
    oracle = pair_count_auc(scores, positive)
    if oracle is None:
        return
    stacked = np.column_stack([1 - scores, scores])
    labels = positive.astype(np.int64)
    report = roc_auc(stacked, labels, 2)
    assert report.curves[1].auc == oracle


class TestEvaluate:
    def test_report_schema_keys(self):
        rng = np.random.default_rng(2)
        probs = rng.random((30, 4))
        probs /= probs.sum(axis=1, keepdims=True)
        labels = rng.integers(0, 4, size=30)
        doc = evaluate(probs, labels, 4).to_json_dict()
        assert set(doc) == {
            "accuracy",
            "confusion_counts",
            "per_class",
            "macro",
            "micro",
            "roc_points",
            "auc",
        }
        assert len(doc["confusion_counts"]) == 4
        assert len(doc["auc"]["per_class"]) == 4

    def test_csv_has_header_and_rows(self):
        probs = np.array([[0.9, 0.1], [0.2, 0.8]])
        labels = np.array([0, 1])
        text = evaluate(probs, labels, 2).to_csv()
        lines = text.strip().split("\n")
        assert lines[0] == "metric,class,value"
        assert any(line.startswith("accuracy,,1.000000") for line in lines)
