"""Tests for the scikit-learn estimator facade."""

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from lpborsuk import BorsukPartition, partition, PNorm
from lpborsuk.sampling import ball_points


def seeded_cloud(p=1.5, n=120, seed=0):
    return ball_points(n, 4, PNorm(p), np.random.default_rng(seed))


class TestEstimatorApi:
    def test_get_set_params(self):
        est = BorsukPartition(p=1.5, verify=False)
        assert est.get_params() == {"p": 1.5, "verify": False}
        est.set_params(p="inf")
        assert est.get_params()["p"] == "inf"

    def test_clone(self):
        est = BorsukPartition(p=3.0)
        twin = clone(est)
        assert twin.get_params() == est.get_params()

    def test_fit_returns_self_and_sets_attributes(self):
        X = seeded_cloud()
        est = BorsukPartition(p=1.5)
        assert est.fit(X) is est
        assert est.labels_.shape == (len(X),)
        assert est.method_ == "hadamard_cell"
        assert est.ratio_ < 1.0
        assert est.n_parts_ <= 16
        assert est.verified_ is True

    def test_fit_predict_matches_labels(self):
        X = seeded_cloud(seed=3)
        est = BorsukPartition(p=2.0)
        labels = est.fit_predict(X)
        assert labels.tolist() == est.labels_.tolist()

    def test_matches_functional_api(self):
        X = seeded_cloud(p=1.0, seed=5)
        est = BorsukPartition(p=1.0).fit(X)
        res = partition(X, PNorm(1))
        assert est.labels_.tolist() == res.labels.tolist()
        assert est.ratio_ == res.ratio

    def test_inf_exponent(self):
        X = seeded_cloud(p=2.0, seed=7)
        est = BorsukPartition(p="inf").fit(X)
        assert est.method_ == "cube"
        assert est.ratio_ <= 0.5 + 1e-9

    def test_cross_polytope_vertices(self):
        X = np.vstack([np.eye(4), -np.eye(4)])
        est = BorsukPartition(p=1).fit(X)
        assert est.n_parts_ == 8
        assert est.ratio_ == 0.0

    def test_verify_off(self):
        est = BorsukPartition(p=1.5, verify=False).fit(seeded_cloud())
        assert not hasattr(est, "verified_")


class TestEstimatorValidation:
    def test_wrong_feature_count(self):
        with pytest.raises(ValueError, match="4 features"):
            BorsukPartition().fit(np.zeros((10, 3)))

    def test_bad_exponent(self):
        with pytest.raises(ValueError):
            BorsukPartition(p=0.5).fit(seeded_cloud())

    def test_non_numeric_rejected(self):
        with pytest.raises(ValueError):
            BorsukPartition().fit([["a", "b", "c", "d"]])

    def test_part_accessor(self):
        X = seeded_cloud(seed=11)
        est = BorsukPartition(p=1.5).fit(X)
        counts = sum(len(est.get_part_points(X, part)) for part in range(16))
        assert counts == len(X)

    def test_part_accessor_requires_fit(self):
        with pytest.raises(NotFittedError):
            BorsukPartition().get_part_points(seeded_cloud(), 0)
