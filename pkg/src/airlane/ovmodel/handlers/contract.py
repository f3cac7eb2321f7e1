__all__ = [
    "contract_contains",
    "validate_contract",
    "active_ovs",
    "contract_mean_area",
    "contract_intersects_nfz",
]

import math
from typing import List

import numpy as np

from ...geo.schemas import LocalPoint
from ..schemas import Contract, ContractViolation, NoFlyZone
from .operational_volume import ov_contains, ov_intersects_nfz, ov_total_volume


# --------------------------------------------------
def contract_contains(contract: Contract, p: LocalPoint, t: float) -> bool:
    """True when any OV valid at ``t`` contains ``p``; during the offset
    overlap two OVs may answer."""
    return any(ov_contains(ov, p, t) for ov in contract.ovs)


# --------------------------------------------------
def active_ovs(contract: Contract, t: float) -> List[int]:
    return [i for i, ov in enumerate(contract.ovs) if ov.is_active(t)]


# --------------------------------------------------
def validate_contract(contract: Contract, tol: float = 1e-9) -> List[ContractViolation]:
    violations: List[ContractViolation] = []
    if not contract.ovs:
        return violations
    t_d = contract.ovs[0].t_d
    delta = contract.ovs[0].delta
    spacing = None
    for i, ov in enumerate(contract.ovs):
        if not math.isclose(ov.t_d, t_d, abs_tol=tol):
            violations.append(
                ContractViolation(
                    rule="uniform_duration",
                    msg=f"OV {i} lasts {ov.t_d} s, expected {t_d} s",
                    ov_index=i,
                )
            )
        if not math.isclose(ov.delta, delta, abs_tol=tol):
            violations.append(
                ContractViolation(
                    rule="uniform_offset",
                    msg=f"OV {i} uses offset {ov.delta} s, expected {delta} s",
                    ov_index=i,
                )
            )
        times = np.array([e.t for e in ov.entries])
        if times.size > 1:
            steps = np.diff(times)
            if spacing is None:
                spacing = float(steps[0])
            if not np.allclose(steps, spacing, atol=tol):
                violations.append(
                    ContractViolation(
                        rule="uniform_spacing",
                        msg=f"OV {i} entries are not spaced {spacing} s apart",
                        ov_index=i,
                    )
                )
    for i, (prev, nxt) in enumerate(zip(contract.ovs, contract.ovs[1:])):
        expected = prev.t0 + (prev.t_d - prev.delta)
        if not math.isclose(nxt.t0, expected, abs_tol=tol):
            violations.append(
                ContractViolation(
                    rule="offset_chain",
                    msg=f"OV {i + 1} starts at {nxt.t0} s, expected {expected} s",
                    ov_index=i + 1,
                )
            )
    return violations


# --------------------------------------------------
def contract_mean_area(contract: Contract) -> float:
    """Mean per-OV union footprint, km^2."""
    if not contract.ovs:
        return 0.0
    return float(np.mean([ov_total_volume(ov) for ov in contract.ovs]))


# --------------------------------------------------
def contract_intersects_nfz(contract: Contract, nfz: NoFlyZone) -> List[int]:
    """Indices of the OVs that violate ``nfz``."""
    return [i for i, ov in enumerate(contract.ovs) if ov_intersects_nfz(ov, nfz)]
