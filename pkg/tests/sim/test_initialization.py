import math

import numpy as np
import pytest

from airlane.geo.handlers import to_geo, to_local
from airlane.ovmodel.schemas import Box3D
from airlane.sim.handlers import (
    init_states_from_batch,
    init_states_uniform,
    nominal_state_uniform,
    run_batch,
)
from airlane.sim.schemas import UncertaintyConfig
from airlane.utils import ConfigError, InfeasibleResampleError


@pytest.mark.sim
class TestInitStatesUniform:
    @pytest.fixture(autouse=True)
    def setup_fixture(self, straight_route):
        self.origin = to_geo(straight_route.projection, straight_route.origin)
        self.heading = straight_route.leg_heading(1)

    def test_zero_uncertainty_collapses(self, quiet_uncertainty):
        states = init_states_uniform(self.origin, self.heading, quiet_uncertainty, 10)
        first = states[0].model_dump()
        assert all(s.model_dump() == first for s in states)

    def test_speed_range_is_covered(self):
        cfg = UncertaintyConfig(speed_range=(20.0, 24.0), seed=2)
        states = init_states_uniform(self.origin, self.heading, cfg, 2000)
        tas = np.array([s.tas for s in states])
        assert tas.min() >= 20.0 and tas.max() <= 24.0
        assert tas.min() < 20.5 and tas.max() > 23.5

    def test_position_inside_disc(self, projection):
        cfg = UncertaintyConfig(pos_jitter=50.0, seed=4)
        states = init_states_uniform(self.origin, self.heading, cfg, 500)
        center = to_local(projection, self.origin)
        r = [to_local(projection, s.pos).distance_2d(center) for s in states]
        assert max(r) <= 50.0 + 1e-6

    def test_same_seed_same_states(self, noisy_uncertainty):
        a = init_states_uniform(self.origin, self.heading, noisy_uncertainty, 30)
        b = init_states_uniform(self.origin, self.heading, noisy_uncertainty, 30)
        assert [s.model_dump() for s in a] == [s.model_dump() for s in b]

    def test_batch_key_changes_draws(self, noisy_uncertainty):
        a = init_states_uniform(self.origin, self.heading, noisy_uncertainty, 5)
        b = init_states_uniform(
            self.origin, self.heading, noisy_uncertainty, 5, batch_key=1
        )
        assert [s.tas for s in a] != [s.tas for s in b]

    def test_needs_two_aircraft(self, noisy_uncertainty):
        with pytest.raises(ConfigError):
            init_states_uniform(self.origin, self.heading, noisy_uncertainty, 1)


@pytest.mark.sim
class TestInitStatesFromBatch:
    @pytest.fixture(autouse=True)
    def setup_fixture(self, straight_route, aircraft, quiet_uncertainty):
        origin = to_geo(straight_route.projection, straight_route.origin)
        heading = straight_route.leg_heading(1)
        states = init_states_uniform(origin, heading, quiet_uncertainty, 10)
        self.identical = run_batch(
            states,
            straight_route,
            aircraft,
            quiet_uncertainty,
            60,
            nominal=nominal_state_uniform(origin, heading, quiet_uncertainty),
        )
        self.route = straight_route

    def test_degenerate_distribution(self, quiet_uncertainty):
        drawn = init_states_from_batch(self.identical, 45.0, quiet_uncertainty, 20)
        expected = self.identical.state(0, 45)
        for s in drawn:
            assert s.t == pytest.approx(self.identical.t0 + 45.0)
            assert s.pos.lat == pytest.approx(expected.pos.lat, abs=1e-9)
            assert s.pos.lon == pytest.approx(expected.pos.lon, abs=1e-9)
            assert s.tas == pytest.approx(expected.tas)
            assert s.heading == pytest.approx(expected.heading, abs=1e-4)

    def test_unbounded_margin_matches_fit(self, noisy_batch, noisy_uncertainty):
        n = 1000
        drawn = init_states_from_batch(noisy_batch, 45.0, noisy_uncertainty, n)
        rel = noisy_batch.t - noisy_batch.t0
        window = (rel >= 43.0 - 1e-9) & (rel <= 47.0 + 1e-9)
        drawn_values = {
            "alt": np.array([s.pos.alt for s in drawn]),
            "tas": np.array([s.tas for s in drawn]),
        }
        for name, values in (("alt", noisy_batch.alt), ("tas", noisy_batch.tas)):
            samples = values[:, window].ravel()
            got = drawn_values[name]
            tolerance = 3.0 * samples.std() / math.sqrt(n) + 1e-9
            assert abs(got.mean() - samples.mean()) <= tolerance

    def test_tas_mean_within_two_percent(self, noisy_batch, noisy_uncertainty):
        drawn = init_states_from_batch(noisy_batch, 45.0, noisy_uncertainty, 1000)
        rel = noisy_batch.t - noisy_batch.t0
        window = (rel >= 43.0 - 1e-9) & (rel <= 47.0 + 1e-9)
        expected = noisy_batch.tas[:, window].mean()
        assert np.mean([s.tas for s in drawn]) == pytest.approx(expected, rel=0.02)

    def test_positions_respect_region(self, noisy_batch, noisy_uncertainty):
        x = noisy_batch.x[:, 45]
        y = noisy_batch.y[:, 45]
        region = Box3D(
            xmin=float(x.min()),
            ymin=float(y.min()),
            zmin=0.0,
            xmax=float(x.max()),
            ymax=float(y.max()),
            zmax=20.0,
        )
        drawn = init_states_from_batch(
            noisy_batch, 45.0, noisy_uncertainty, 200, region=region, margin=5.0
        )
        for s in drawn:
            p = to_local(noisy_batch.projection, s.pos)
            assert region.distance_2d(p.x, p.y) <= 5.0 + 1e-6

    def test_unreachable_region(self, noisy_batch, noisy_uncertainty):
        far = Box3D(xmin=1e5, ymin=1e5, zmin=0.0, xmax=1e5 + 10, ymax=1e5 + 10, zmax=10)
        with pytest.raises(InfeasibleResampleError):
            init_states_from_batch(
                noisy_batch, 45.0, noisy_uncertainty, 50, region=far, margin=0.0
            )

    def test_window_must_fit(self, noisy_batch, noisy_uncertainty):
        with pytest.raises(ConfigError):
            init_states_from_batch(noisy_batch, 59.5, noisy_uncertainty, 10)

    def test_legs_follow_route(self, noisy_batch, noisy_uncertainty):
        drawn = init_states_from_batch(
            noisy_batch, 45.0, noisy_uncertainty, 50, route=self.route
        )
        assert {s.leg for s in drawn} <= {1, 2}
