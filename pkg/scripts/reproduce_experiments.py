"""
Runs every experiment suite over the shipped scenarios and writes one CSV and
one Markdown report per (suite, scenario) into the output directory.

Seeds come from AIRLANE_REPRO_SEEDS (comma separated) or default to 1..5.
"""

import os
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from airlane.config import logger, settings  # noqa: E402
from airlane.evalharness.handlers import write_report  # noqa: E402
from airlane.evalharness.schemas import ROUTE_SCENARIOS, ExperimentSpec  # noqa: E402
from airlane.evalharness.services import run_experiment  # noqa: E402


# -------------------------------------------------
def main():
    seeds = [
        int(s) for s in os.environ.get("AIRLANE_REPRO_SEEDS", "1,2,3,4,5").split(",")
    ]
    out_dir = settings.AIRLANE_OUTPUT_DIR / "experiments"

    specs = [
        ExperimentSpec(suite="inclusion", scenario=s, seeds=seeds)
        for s in ROUTE_SCENARIOS
    ]
    specs += [
        ExperimentSpec(suite="sensitivity", scenario=s, seeds=seeds)
        for s in ROUTE_SCENARIOS
    ]
    specs.append(ExperimentSpec(suite="planning", seeds=seeds))

    for spec in specs:
        logger.info(f"Running {spec.suite} on {spec.scenario} with seeds {seeds}")
        report = run_experiment(spec)
        csv_path, md_path = write_report(report, out_dir)
        print(f"{spec.suite}/{spec.scenario}: {csv_path.name}, {md_path.name}")


# -------------------------------------------------
if __name__ == "__main__":
    main()

    # From the repository root

    # poetry run python scripts/reproduce_experiments.py
