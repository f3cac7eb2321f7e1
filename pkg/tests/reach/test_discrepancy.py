import numpy as np
import pytest

from airlane.geo.handlers import normalization_box_from_points, normalize
from airlane.reach.handlers import (
    SEGMENT_SECONDS,
    learn_discrepancy,
    max_deviation,
    select_training_subset,
)
from airlane.utils import InsufficientDataError


# --------------------------------------------------
def _center(duration: int = 60) -> np.ndarray:
    t = np.arange(duration + 1, dtype=float)
    return np.column_stack([0.2 + 0.01 * t, 0.3 + 0.005 * t, np.full(t.size, 0.5)])


@pytest.mark.reach
class TestLearnDiscrepancy:
    @pytest.fixture(autouse=True)
    def setup_fixture(self):
        self.center = _center()
        self.t = np.arange(self.center.shape[0], dtype=float)

    def test_identical_training_collapses_to_floor(self):
        training = np.repeat(self.center[None], 8, axis=0)
        model = learn_discrepancy(self.center, training, np.zeros(3), floor=1e-4)
        np.testing.assert_allclose(model.bound(self.t), 1e-4, rtol=1e-6)

    def test_recovers_exponential_spread(self):
        r0 = 1e-3
        spread = r0 * np.exp(0.01 * self.t)
        training = np.repeat(self.center[None], 6, axis=0)
        for j, scale in enumerate([1.0, -1.0, 0.5, -0.25, 0.75, 0.1]):
            training[j, :, 0] += scale * spread
        model = learn_discrepancy(
            self.center, training, np.array([r0, 0.0, 0.0]), floor=1e-6
        )
        axis = model.axes[0]
        assert len(axis.segments) == int(np.ceil(60 / SEGMENT_SECONDS))
        assert axis.segments[0].K == pytest.approx(1.0, rel=0.05)
        for segment in axis.segments:
            assert segment.gamma == pytest.approx(0.01, rel=0.05)
        np.testing.assert_allclose(axis.bound(self.t), spread, rtol=0.05)

    def test_bound_dominates_training(self, noisy_batch):
        geo = noisy_batch.geo
        normalized = normalize(normalization_box_from_points(geo), geo)
        training = normalized[select_training_subset(noisy_batch, 16)]
        center = normalized[noisy_batch.center_index]
        radius = np.abs(training[:, 0, :] - center[0]).max(axis=0)
        model = learn_discrepancy(center, training, radius, floor=1e-6)
        deviation = max_deviation(center, training)
        assert np.all(model.bound(self.t) >= deviation)

    def test_larger_spread_larger_bound(self, noisy_batch):
        geo = noisy_batch.geo
        normalized = normalize(normalization_box_from_points(geo), geo)
        center = normalized[0]
        training = normalized[1:17]
        radius = np.abs(training[:, 0, :] - center[0]).max(axis=0)
        wider = center + 2.0 * (training - center)
        small = learn_discrepancy(center, training, radius, floor=1e-12)
        large = learn_discrepancy(center, wider, 2.0 * radius, floor=1e-12)
        assert np.all(large.bound(self.t) >= small.bound(self.t) - 1e-12)

    def test_segments_are_continuous(self, noisy_batch):
        geo = noisy_batch.geo
        normalized = normalize(normalization_box_from_points(geo), geo)
        model = learn_discrepancy(
            normalized[0], normalized[1:17], np.full(3, 1e-3), floor=1e-6
        )
        for axis in model.axes:
            for left, right in zip(axis.segments, axis.segments[1:]):
                end = axis.r0 * left.K * np.exp(left.gamma * (right.start - left.start))
                assert end == pytest.approx(axis.r0 * right.K, rel=1e-6)
            assert all(s.K >= 1.0 for s in axis.segments)

    def test_needs_five_training_trajectories(self):
        training = np.repeat(self.center[None], 4, axis=0)
        with pytest.raises(InsufficientDataError):
            learn_discrepancy(self.center, training, np.full(3, 1e-3))


@pytest.mark.reach
class TestTrainingSubset:
    def test_excludes_center_and_is_unique(self, noisy_batch):
        chosen = select_training_subset(noisy_batch, 16)
        assert len(chosen) == 16
        assert len(set(chosen.tolist())) == 16
        assert noisy_batch.center_index not in chosen

    def test_small_batch_uses_everyone(self, noisy_batch):
        small = noisy_batch.subset(np.arange(10))
        chosen = select_training_subset(small, 16)
        assert chosen.tolist() == list(range(1, 10))
