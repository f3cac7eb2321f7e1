__all__ = [
    "load_scenario_file",
    "load_contract_file",
    "load_foreign_contracts",
    "align_contract",
    "format_diagnostics",
]

import json
from pathlib import Path
from typing import List, Tuple

from pydantic import ValidationError

from ...config import logger
from ...geo.handlers import make_projection, to_local
from ...geo.schemas import GeoPoint, Projection
from ...ovmodel.handlers import contract_from_dict, contract_origin
from ...ovmodel.schemas import Box3D, Contract
from ...utils import ErrorsDetails, ScenarioError, errors_from_validation
from ..schemas import ScenarioFile


# --------------------------------------------------
def _read_json_located(path: Path) -> dict:
    """JSON payload of ``path``; decode errors become line/column diagnostics."""
    text = path.read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        detail = ErrorsDetails(
            loc=f"line {e.lineno}, column {e.colno}",
            msg=e.msg,
            error_type="json_invalid",
        )
        raise ScenarioError(f"{path} is not valid JSON", details=[detail])


# --------------------------------------------------
def load_scenario_file(path: str | Path) -> ScenarioFile:
    path = Path(path)
    payload = _read_json_located(path)
    try:
        return ScenarioFile.model_validate(payload)
    except ValidationError as e:
        raise ScenarioError(
            f"{path} is not a valid scenario", details=errors_from_validation(e)
        )


# --------------------------------------------------
def load_contract_file(path: str | Path) -> Tuple[Contract, GeoPoint | None]:
    """Contract and the geographic origin of its frame, when recorded."""
    path = Path(path)
    payload = _read_json_located(path)
    try:
        return contract_from_dict(payload), contract_origin(payload)
    except ValidationError as e:
        raise ScenarioError(
            f"{path} is not a valid contract", details=errors_from_validation(e)
        )
    except (KeyError, IndexError, TypeError) as e:
        detail = ErrorsDetails(
            loc=str(e), msg="missing or malformed field", error_type="missing"
        )
        raise ScenarioError(f"{path} is not a valid contract", details=[detail])


# --------------------------------------------------
def align_contract(
    contract: Contract, source: GeoPoint | None, target: Projection
) -> Contract:
    """Moves a contract built around ``source`` into the frame of ``target``.

    Within the projection window the two flat frames differ by a translation,
    which is applied to every entry box and grid origin. A contract without a
    recorded origin is assumed to share the target frame.
    """
    if source is None:
        return contract
    offset = to_local(target, source)
    if offset.x == 0 and offset.y == 0:
        return contract
    dx, dy = offset.x, offset.y
    ovs = []
    for ov in contract.ovs:
        entries = []
        for entry in ov.entries:
            r = entry.region
            region = Box3D(
                xmin=r.xmin + dx,
                ymin=r.ymin + dy,
                zmin=r.zmin,
                xmax=r.xmax + dx,
                ymax=r.ymax + dy,
                zmax=r.zmax,
            )
            origin = entry.dist.origin.model_copy(
                update={"x": entry.dist.origin.x + dx, "y": entry.dist.origin.y + dy}
            )
            dist = entry.dist.model_copy(update={"origin": origin})
            entries.append(entry.model_copy(update={"region": region, "dist": dist}))
        ovs.append(ov.model_copy(update={"entries": entries}))
    logger.debug(f"Contract {contract.route_id} shifted by ({dx:.1f}, {dy:.1f}) m")
    return contract.model_copy(update={"ovs": ovs})


# --------------------------------------------------
def load_foreign_contracts(
    scenario: ScenarioFile, scenario_path: str | Path
) -> List[Contract]:
    """Foreign contracts named by the scenario, relative paths resolved
    against the scenario file and translated into its frame."""
    base = Path(scenario_path).parent
    projection = make_projection(scenario.origin)
    contracts = []
    for name in scenario.foreign_contracts:
        path = Path(name) if Path(name).is_absolute() else base / name
        contract, origin = load_contract_file(path)
        contracts.append(align_contract(contract, origin, projection))
        logger.info(
            f"Foreign contract {contract.route_id}: {len(contract.ovs)} OVs from {path}"
        )
    return contracts


# --------------------------------------------------
def format_diagnostics(details: List[ErrorsDetails]) -> List[str]:
    return [f"{d.loc}: {d.msg} [{d.error_type}]" for d in details]
