import numpy as np
import pytest

from airlane.geo.schemas import LocalPoint
from airlane.ovmodel.handlers import build_grid
from airlane.ovmodel.schemas import Box3D, Contract, OperationalVolume, OVEntry


@pytest.fixture(scope="session")
def quick_config(small_config):
    """Short horizons and a forgiving verification threshold."""
    return small_config.model_copy(
        update={"t_d": 30, "delta": 5.0, "verification_threshold": 0.8, "step": 100.0}
    )


@pytest.fixture(scope="session")
def endpoints():
    return LocalPoint(x=0.0, y=0.0, z=7.5), LocalPoint(x=600.0, y=0.0, z=7.5)


@pytest.fixture(scope="session")
def hovering_contract():
    """Foreign aircraft hovering on the direct line at x = 300 m for 200 s."""
    region = Box3D(xmin=280.0, ymin=-20.0, zmin=0.0, xmax=320.0, ymax=20.0, zmax=20.0)
    grid = build_grid(np.full(20, 300.0), np.zeros(20), region)
    entries = [OVEntry(region=region, t=float(k), dist=grid) for k in range(201)]
    ov = OperationalVolume(entries=entries, t0=0.0, t_d=200.0, delta=10.0)
    return Contract(ovs=[ov], route_id="hover")
