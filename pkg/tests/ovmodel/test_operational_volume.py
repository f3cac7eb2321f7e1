import pytest
from pydantic import ValidationError

from airlane.geo.schemas import LocalPoint
from airlane.ovmodel.handlers import (
    build_ov,
    ov_contains,
    ov_footprint,
    ov_intersects_nfz,
    ov_total_volume,
    probability,
)
from airlane.ovmodel.schemas import NoFlyZone, OperationalVolume
from airlane.reach.handlers import analyze_batch
from airlane.utils import AlignmentError, ConfigError, TemporalRangeError

from .factories import make_ov


@pytest.mark.ovmodel
class TestOperationalVolume:
    @pytest.fixture(autouse=True)
    def setup_fixture(self):
        self.ov = make_ov(t0=100.0)

    def test_lifetime(self):
        assert self.ov.t_end == 110.0
        assert self.ov.is_active(100.0) and self.ov.is_active(110.0)
        assert not self.ov.is_active(110.5)
        assert self.ov.n_aircraft == 8

    def test_entry_index_floors(self):
        assert self.ov.entry_index(100.0) == 0
        assert self.ov.entry_index(103.7) == 3
        assert self.ov.entry_index(110.0) == 10

    def test_probability_inside_and_outside(self):
        inside = probability(self.ov, LocalPoint(x=1.5, y=0.0), 100.0)
        assert 0.0 < inside <= 1.0
        assert probability(self.ov, LocalPoint(x=500.0, y=0.0), 100.0) == 0.0

    def test_probability_outside_lifetime(self):
        with pytest.raises(TemporalRangeError):
            probability(self.ov, LocalPoint(x=1.5, y=0.0), 99.0)

    def test_contains_follows_time(self):
        p = LocalPoint(x=55.0, y=0.0, z=5.0)
        assert not ov_contains(self.ov, p, 100.0)
        assert ov_contains(self.ov, p, 104.0)
        assert not ov_contains(self.ov, LocalPoint(x=55.0, y=0.0, z=50.0), 104.0)
        assert not ov_contains(self.ov, p, 200.0)

    def test_footprint_area(self):
        # boxes 20 x 20 m sliding 10 m: union is 120 m x 20 m
        assert ov_footprint(self.ov).area == pytest.approx(120.0 * 20.0)
        assert ov_total_volume(self.ov) == pytest.approx(120.0 * 20.0 / 1e6)

    def test_nfz_intersection_respects_altitude(self):
        low = NoFlyZone.from_rectangle("low", 50.0, -5.0, 60.0, 5.0)
        high = NoFlyZone.from_rectangle(
            "high", 50.0, -5.0, 60.0, 5.0, alt_range=(100.0, 200.0)
        )
        away = NoFlyZone.from_rectangle("away", 500.0, 500.0, 600.0, 600.0)
        assert ov_intersects_nfz(self.ov, low)
        assert not ov_intersects_nfz(self.ov, high)
        assert not ov_intersects_nfz(self.ov, away)

    def test_timeline_is_checked(self):
        entries = self.ov.entries[:-1]
        with pytest.raises(ValidationError):
            OperationalVolume(entries=entries, t0=100.0, t_d=10.0, delta=2.0)

    def test_offset_below_duration(self):
        with pytest.raises(ValidationError):
            OperationalVolume(entries=[], t0=0.0, t_d=10.0, delta=10.0)


@pytest.mark.ovmodel
class TestBuildOV:
    @pytest.fixture(autouse=True)
    def setup_fixture(self, noisy_batch, noisy_uncertainty):
        self.batch = noisy_batch
        self.analysis = analyze_batch(noisy_batch, noisy_uncertainty)

    def test_one_entry_per_second(self):
        ov = build_ov(self.analysis.tube, self.batch, delta=5.0, index=3)
        assert len(ov.entries) == 61
        assert ov.t_d == 60.0 and ov.delta == 5.0 and ov.index == 3
        assert ov.entries[-1].region == self.analysis.tube.segments[-1]

    def test_every_aircraft_counted(self):
        ov = build_ov(self.analysis.tube, self.batch, delta=5.0)
        for entry in ov.entries:
            assert entry.dist.counts.sum() == self.batch.n
            assert entry.dist.n_total == self.batch.n

    def test_center_is_contained(self):
        ov = build_ov(self.analysis.tube, self.batch, delta=5.0)
        c = self.batch.center_index
        for k in range(self.batch.duration + 1):
            p = LocalPoint(
                x=float(self.batch.x[c, k]),
                y=float(self.batch.y[c, k]),
                z=float(self.batch.alt[c, k]),
            )
            assert ov_contains(ov, p, float(self.batch.t[k]))

    def test_offset_must_fit(self):
        with pytest.raises(ConfigError):
            build_ov(self.analysis.tube, self.batch, delta=60.0)

    def test_misaligned_tube(self):
        tube = self.analysis.tube.model_copy(update={"t0": 7.0})
        with pytest.raises(AlignmentError):
            build_ov(tube, self.batch, delta=5.0)
