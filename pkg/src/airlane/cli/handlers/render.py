__all__ = ["render_contract_svg", "OV_COLORS"]

import io
from pathlib import Path
from typing import Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.collections import PolyCollection  # noqa: E402

from ...ovmodel.handlers import box_ring  # noqa: E402
from ...ovmodel.schemas import Contract, NoFlyZone  # noqa: E402
from ...utils import atomic_write_text  # noqa: E402

OV_COLORS = ("red", "green", "blue")

# Fixed salt and no date keep the SVG byte-stable across runs.
SVG_RC = {"svg.hashsalt": "airlane", "svg.fonttype": "none"}


# --------------------------------------------------
def render_contract_svg(
    contract: Contract,
    out_svg: str | Path,
    nfzs: Sequence[NoFlyZone] = (),
    route_xy: Optional[Sequence[Tuple[float, float]]] = None,
    title: Optional[str] = None,
) -> Path:
    """Top-down view in local meters: one ``<g id="ov-i">`` group of entry
    footprints per OV, filled red, green, blue in turn, under the NFZs and
    the route polyline."""
    with plt.rc_context(SVG_RC):
        fig, ax = plt.subplots(figsize=(8, 8))
        for i, ov in enumerate(contract.ovs):
            color = OV_COLORS[i % len(OV_COLORS)]
            footprints = PolyCollection(
                [box_ring(entry.region)[:-1] for entry in ov.entries],
                facecolors=color,
                edgecolors=color,
                alpha=0.2,
                linewidths=0.4,
            )
            footprints.set_gid(f"ov-{i}")
            ax.add_collection(footprints)
        for nfz in nfzs:
            zone = PolyCollection(
                [[(p.x, p.y) for p in nfz.polygon]],
                facecolors="0.6",
                edgecolors="black",
                hatch="//",
                linewidths=0.8,
            )
            zone.set_gid(f"nfz-{nfz.id}")
            ax.add_collection(zone)
        if route_xy:
            xs, ys = zip(*route_xy)
            ax.plot(
                xs,
                ys,
                color="black",
                linewidth=1.2,
                marker="o",
                markersize=2,
                gid="route",
            )
        ax.autoscale_view()
        ax.set_aspect("equal", adjustable="datalim")
        ax.set_xlabel("east [m]")
        ax.set_ylabel("north [m]")
        ax.set_title(title or f"{contract.route_id}: {len(contract.ovs)} OVs")
        buffer = io.StringIO()
        fig.savefig(buffer, format="svg", metadata={"Date": None})
        plt.close(fig)
    return atomic_write_text(out_svg, buffer.getvalue())
