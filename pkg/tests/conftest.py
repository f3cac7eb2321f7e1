import pytest

from airlane.geo.handlers import make_projection, to_geo
from airlane.geo.schemas import GeoPoint, LocalPoint
from airlane.ovmodel.schemas import NoFlyZone
from airlane.pipeline.schemas import PipelineConfig
from airlane.planner.schemas import Environment, Route
from airlane.sim.handlers import init_states_uniform, nominal_state_uniform, run_batch
from airlane.sim.schemas import AircraftModel, UncertaintyConfig

BRISTOL = GeoPoint(lat=51.45, lon=-2.6)


@pytest.fixture(scope="session")
def projection():
    return make_projection(BRISTOL)


@pytest.fixture(scope="session")
def aircraft():
    return AircraftModel.preset("octocopter")


@pytest.fixture(scope="session")
def straight_route(projection):
    """3 km due east at 7.5 m, flown at 18 m/s."""
    return Route(
        waypoints=[
            LocalPoint(x=0.0, y=0.0, z=7.5),
            LocalPoint(x=1500.0, y=0.0, z=7.5),
            LocalPoint(x=3000.0, y=0.0, z=7.5),
        ],
        speed_bounds=(18.0, 18.0),
        projection=projection,
        route_id="straight",
    )


@pytest.fixture(scope="session")
def quiet_uncertainty():
    """No initial spread and no log noise: every aircraft flies the nominal."""
    return UncertaintyConfig(
        pos_jitter=0.0,
        alt_range=(7.5, 7.5),
        speed_range=(18.0, 18.0),
        heading_jitter=0.0,
        log_noise_pos=0.0,
        log_noise_alt=0.0,
        resample_window_c=0.0,
        seed=1,
    )


@pytest.fixture(scope="session")
def noisy_uncertainty():
    return UncertaintyConfig(
        pos_jitter=20.0,
        alt_range=(5.0, 10.0),
        speed_range=(16.0, 20.0),
        heading_jitter=5.0,
        log_noise_pos=3.0,
        log_noise_alt=1.0,
        resample_window_c=2.0,
        seed=3,
    )


@pytest.fixture(scope="session")
def noisy_batch(straight_route, aircraft, noisy_uncertainty):
    """60 s batch of 60 aircraft plus the nominal along the straight route."""
    origin = to_geo(straight_route.projection, straight_route.origin)
    heading = straight_route.leg_heading(1)
    states = init_states_uniform(origin, heading, noisy_uncertainty, 60)
    nominal = nominal_state_uniform(origin, heading, noisy_uncertainty)
    return run_batch(
        states, straight_route, aircraft, noisy_uncertainty, 60, nominal=nominal
    )


@pytest.fixture(scope="session")
def small_config(aircraft):
    return PipelineConfig(
        n_aircraft=40,
        seed=5,
        aircraft=aircraft,
        uncertainty=UncertaintyConfig(seed=5),
    )


@pytest.fixture(scope="session")
def open_environment(projection):
    """4 km x 2 km box without obstacles."""
    return Environment(
        bounds=(-500.0, -1000.0, 3500.0, 1000.0), projection=projection
    )


@pytest.fixture(scope="session")
def wall_environment(projection):
    """Same box with a wall across the direct line, open to the north."""
    return Environment(
        bounds=(-500.0, -1000.0, 3500.0, 1000.0),
        nfzs=[NoFlyZone.from_rectangle("wall", 1400.0, -1000.0, 1600.0, 500.0)],
        projection=projection,
    )
