import pytest

from airlane.geo.schemas import LocalPoint
from airlane.ovmodel.handlers import contract_to_dict, validate_contract
from airlane.pipeline.services import ContractGenerationService, generate_contract
from airlane.planner.schemas import Route
from airlane.utils import ConfigError, PlanningTimeoutError


# --------------------------------------------------
def _route(projection, length: float = 600.0) -> Route:
    return Route(
        waypoints=[LocalPoint(x=0.0, y=0.0, z=7.5), LocalPoint(x=length, y=0.0, z=7.5)],
        projection=projection,
        route_id="short",
    )


@pytest.fixture(scope="module")
def generated(projection, quick_config):
    service = ContractGenerationService(route=_route(projection), cfg=quick_config)
    service.run()
    return service


@pytest.mark.pipeline
class TestContractGenerationService:
    def test_chain_is_valid(self, generated, quick_config):
        contract = generated.contract
        assert len(contract.ovs) >= 2
        assert validate_contract(contract) == []
        assert contract.ovs[0].t0 == 0.0
        assert contract.ovs[1].t0 == pytest.approx(quick_config.horizon_stride)
        assert contract.route_id == "short"

    def test_last_batch_reached_the_goal(self, generated, quick_config):
        assert generated.batches[-1].finished_fraction() >= quick_config.terminal_quorum
        for batch in generated.batches[:-1]:
            assert batch.finished_fraction() < quick_config.terminal_quorum

    def test_every_tube_verified(self, generated, quick_config):
        assert len(generated.reports) == len(generated.ovs)
        for report in generated.reports:
            assert report.inclusion_ratio >= quick_config.verification_threshold

    def test_resample_window_fits_offset(self, projection, quick_config):
        cfg = quick_config.model_copy(
            update={
                "delta": 1.0,
                "uncertainty": quick_config.uncertainty.model_copy(
                    update={"resample_window_c": 4.0}
                ),
            }
        )
        service = ContractGenerationService(route=_route(projection), cfg=cfg)
        assert service.uncertainty.resample_window_c == 1.0

    def test_regeneration_keeps_early_horizons(self, projection, quick_config):
        service = ContractGenerationService(route=_route(projection), cfg=quick_config)
        first = service.run()
        kept = service.ovs[0]
        again = service.run(from_horizon=1)
        assert service.ovs[0] is kept
        assert contract_to_dict(again) == contract_to_dict(first)

    def test_horizon_limit(self, projection, quick_config):
        cfg = quick_config.model_copy(update={"max_horizons": 1})
        service = ContractGenerationService(route=_route(projection, 1500.0), cfg=cfg)
        with pytest.raises(PlanningTimeoutError):
            service.run()

    def test_route_through_nfz(self, projection, wall_environment, quick_config):
        with pytest.raises(ConfigError):
            generate_contract(
                _route(projection, 3000.0), wall_environment, quick_config
            )
