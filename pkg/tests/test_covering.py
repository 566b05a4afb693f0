"""Tests for ball coverings and their verifier."""

import math
from dataclasses import replace

import numpy as np
import pytest

from lpborsuk import (
    CoveringSpec,
    PNorm,
    axis_covering,
    gamma_estimate,
    pnorm,
    row_pnorms,
    verify_covering,
)

SAMPLES = 60_000  # plenty for unit tests; the acceptance suite runs 10^6


class TestAxisCovering:
    def test_dim4_l1(self):
        spec = axis_covering(4, PNorm(1))
        assert spec.shrink == 0.75
        assert len(spec.centers) == 8
        assert spec.centers[0].tolist() == [0.25, 0.0, 0.0, 0.0]
        assert spec.centers[4].tolist() == [-0.25, 0.0, 0.0, 0.0]

    def test_dim4_euclidean(self):
        spec = axis_covering(4, PNorm(2))
        assert spec.shrink == pytest.approx(math.sqrt(3) / 2, abs=1e-15)
        assert spec.centers[1].tolist() == [0.0, 0.5, 0.0, 0.0]

    def test_dim2_l1(self):
        spec = axis_covering(2, PNorm(1))
        assert spec.shrink == 0.5
        assert spec.centers[0].tolist() == [0.5, 0.0]

    def test_regime_guards(self):
        with pytest.raises(ValueError):
            axis_covering(1, PNorm(1))
        with pytest.raises(ValueError):
            axis_covering(4, PNorm(2.5))
        with pytest.raises(ValueError):
            axis_covering(4, PNorm(math.inf))


class TestVerifyCovering:
    def test_tight_pass(self):
        rep = verify_covering(axis_covering(4, PNorm(1)), n_samples=SAMPLES, seed=0)
        assert rep.covered
        assert rep.worst_margin == pytest.approx(0.0, abs=1e-12)
        assert rep.witness.tolist() == [0.25, 0.25, 0.25, 0.25]

    def test_one_percent_shrink_falsified(self):
        spec = axis_covering(4, PNorm(1))
        bad = replace(spec, shrink=spec.shrink * 0.99)
        rep = verify_covering(bad, n_samples=SAMPLES, seed=0)
        assert not rep.covered
        assert np.abs(rep.witness - 0.25).max() < 1e-3
        assert rep.worst_margin == pytest.approx(-0.0075, abs=1e-12)

    def test_identity_covering(self):
        spec = CoveringSpec(4, PNorm(2), 1.0, np.zeros((1, 4)))
        rep = verify_covering(spec, n_samples=SAMPLES, seed=0)
        assert rep.covered
        assert rep.worst_margin >= -1e-9

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("p", [1.0, 1.25, 1.5, 2.0])
    def test_construction_covers(self, n, p):
        rep = verify_covering(axis_covering(n, PNorm(p)), n_samples=SAMPLES, seed=0)
        assert rep.covered

    def test_monotone_in_shrink(self):
        spec = axis_covering(3, PNorm(1.5))
        outcomes = []
        for factor in (0.95, 0.99, 1.0, 1.01):
            trial = replace(spec, shrink=min(1.0, spec.shrink * factor))
            outcomes.append(verify_covering(trial, n_samples=5_000, seed=1).covered)
        # once the covering passes it keeps passing as the shrink grows
        assert outcomes == sorted(outcomes)

    def test_falsified_witness_self_consistent(self):
        spec = axis_covering(4, PNorm(1.5))
        bad = replace(spec, shrink=spec.shrink * 0.99)
        rep = verify_covering(bad, n_samples=SAMPLES, seed=0)
        assert not rep.covered
        x = rep.witness
        assert pnorm(x, bad.norm) <= 1.0 + 1e-9
        nearest = float(row_pnorms(x[None, :] - bad.centers, bad.norm).min())
        assert nearest > bad.shrink + 1e-9

    def test_deterministic_reports(self):
        spec = axis_covering(4, PNorm(1.5))
        a = verify_covering(spec, n_samples=20_000, seed=42)
        b = verify_covering(spec, n_samples=20_000, seed=42)
        assert a.worst_margin == b.worst_margin
        assert a.witness.tolist() == b.witness.tolist()

    def test_threads_do_not_change_the_report(self):
        spec = axis_covering(4, PNorm(1.5))
        a = verify_covering(spec, n_samples=50_000, seed=0, threads=1, chunk=7_000)
        b = verify_covering(spec, n_samples=50_000, seed=0, threads=4, chunk=7_000)
        assert a.worst_margin == b.worst_margin
        assert a.witness.tolist() == b.witness.tolist()

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            CoveringSpec(4, PNorm(1), 0.0, np.zeros((1, 4)))
        with pytest.raises(ValueError):
            CoveringSpec(4, PNorm(1), 1.2, np.zeros((1, 4)))
        with pytest.raises(ValueError):
            CoveringSpec(4, PNorm(1), 0.5, np.zeros((0, 4)))


class TestGammaEstimate:
    def test_axis_covering_dim4_l1(self):
        spec = axis_covering(4, PNorm(1))
        value = gamma_estimate(4, PNorm(1), spec.centers, eps=1e-4, n_samples=20_000)
        assert value == pytest.approx(0.75, abs=1e-4)

    def test_disk_four_centers(self):
        c = math.sqrt(0.5)
        centers = np.array([[c, 0.0], [-c, 0.0], [0.0, c], [0.0, -c]])
        value = gamma_estimate(2, PNorm(2), centers, eps=1e-4, n_samples=20_000)
        assert value == pytest.approx(c, abs=2e-4)

    def test_single_center(self):
        value = gamma_estimate(3, PNorm(2), np.zeros((1, 3)), eps=1e-3, n_samples=5_000)
        assert value == pytest.approx(1.0, abs=1e-3)

    def test_unbracketable(self):
        with pytest.raises(ValueError, match="bracket"):
            gamma_estimate(2, PNorm(2), np.array([[10.0, 0.0]]), n_samples=1_000)

    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("p", [1.0, 1.25, 1.5, 2.0])
    def test_never_beats_the_construction(self, n, p):
        # the estimated covering functional stays at or below the
        # constructed shrink factor for every tested exponent
        spec = axis_covering(n, PNorm(p))
        value = gamma_estimate(n, PNorm(p), spec.centers, eps=1e-3, n_samples=5_000)
        assert value <= spec.shrink + 1e-3
