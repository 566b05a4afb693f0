"""Scikit-learn estimator facade over the partition engine."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .norms import PNorm
from .partition import partition, verify_partition

__all__ = ["BorsukPartition"]


class BorsukPartition(ClusterMixin, BaseEstimator):
    """Split a 4-feature point cloud into at most 16 parts of smaller l_p diameter.

    Behaves like a clusterer: ``fit`` assigns one part label per sample and
    exposes the certificate on fitted attributes.  The label count is a hard
    guarantee (16 parts, 12 for p = 1), not a tuning parameter.

    Parameters
    ----------
    p : float or "inf", default=2.0
        Exponent of the ambient norm the diameters are measured in.
    verify : bool, default=True
        Recompute all part diameters through the independent oracle after
        fitting and store the outcome in ``verified_``.

    Attributes
    ----------
    labels_ : ndarray of shape (n_samples,)
        Part index of each sample, in [0, 16).
    method_ : str
        Which assignment rule ran ("cube", "hadamard_cell" or "crosspolytope").
    ratio_ : float
        Largest part diameter divided by the cloud diameter (< 1 on success).
    n_parts_ : int
        Number of nonempty parts.
    verified_ : bool
        Present when ``verify=True``; the oracle's verdict on the ratio.

    Examples
    --------
    >>> import numpy as np
    >>> from lpborsuk import BorsukPartition
    >>> X = np.vstack([np.eye(4), -np.eye(4)])
    >>> model = BorsukPartition(p=1).fit(X)
    >>> model.n_parts_, model.ratio_
    (8, 0.0)
    """

    def __init__(self, p=2.0, verify=True):
        self.p = p
        self.verify = verify

    def fit(self, X, y=None):
        """Partition X and store the labels and certificate."""
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != 4:
            raise ValueError(
                f"BorsukPartition requires exactly 4 features, got {X.shape[1]}")
        nm = PNorm.parse(self.p)
        result = partition(X, nm)
        self.norm_ = nm
        self.result_ = result
        self.labels_ = result.labels
        self.method_ = result.method
        self.ratio_ = result.ratio
        self.n_parts_ = result.nonempty_parts
        self.part_diameters_ = result.part_diameters
        self.warnings_ = result.warnings
        self.n_features_in_ = 4
        if self.verify:
            ok, report = verify_partition(X, nm, result)
            self.verified_ = ok
            self.verify_report_ = report
        return self

    def get_part_points(self, X, part: int) -> np.ndarray:
        """Rows of X belonging to one fitted part (convenience accessor)."""
        check_is_fitted(self, "labels_")
        X = check_array(X, dtype=np.float64)
        if len(X) != len(self.labels_):
            raise ValueError("X does not match the fitted cloud")
        return X[self.labels_ == part]
