__all__ = [
    "SUITE_METRICS",
    "aggregate_rows",
    "rows_from_dataframe",
    "summary_table",
    "report_basename",
    "write_report",
]

from pathlib import Path
from typing import Dict, List, Tuple

import pandas as pd

from ...config import logger
from ...utils import validate_and_extract_data_from_df, write_csv, write_markdown
from ..schemas import ExperimentReport, ExperimentRow

SUITE_METRICS = {
    "inclusion": ["total_points", "included_points", "inclusion_pct"],
    "sensitivity": ["n_ovs", "mean_area_km2"],
    "planning": ["wall_time_s", "candidate_length", "optimized_length", "delta_length"],
}


# --------------------------------------------------
def _group_keys(df: pd.DataFrame) -> List[str]:
    keys = ("parameter", "value", "opt_factor")
    return [k for k in keys if k in df and df[k].notna().any()]


# --------------------------------------------------
def aggregate_rows(df: pd.DataFrame, suite: str) -> pd.DataFrame:
    """Median and interquartile range of the suite metrics per sweep point."""
    metrics = [m for m in SUITE_METRICS[suite] if m in df]
    if df.empty or not metrics:
        return pd.DataFrame()
    ok = df[df["status"] == "ok"]
    keys = _group_keys(df)
    grouped = ok.groupby(keys, sort=False) if keys else [((), ok)]
    records = []
    for key, group in grouped:
        key = key if isinstance(key, tuple) else (key,)
        record: Dict[str, object] = dict(zip(keys, key))
        record["n_seeds"] = int(group["seed"].nunique())
        for m in metrics:
            values = group[m].astype(float)
            record[f"{m}_median"] = float(values.median())
            record[f"{m}_iqr"] = float(values.quantile(0.75) - values.quantile(0.25))
        records.append(record)
    return pd.DataFrame(records)


# --------------------------------------------------
def rows_from_dataframe(df: pd.DataFrame) -> List[ExperimentRow]:
    """Validates CSV rows back into ExperimentRow, logging the rejects."""
    result = validate_and_extract_data_from_df(df, ExperimentRow, field_id="seed")
    for error in result.errors:
        logger.warning(f"Row for seed {error.doc_id} rejected: {error.details}")
    return result.validated


# --------------------------------------------------
def summary_table(report: ExperimentReport) -> pd.DataFrame:
    """The aggregates as one wide table per suite."""
    agg = report.aggregates_dataframe()
    if agg.empty:
        return agg
    scenario = report.spec.scenario
    if report.spec.suite == "inclusion":
        return pd.DataFrame(
            {
                "Scenario": [scenario],
                "Total recorded points": agg["total_points_median"],
                "% of points in valid OV": agg["inclusion_pct_median"],
            }
        )
    if report.spec.suite == "sensitivity":
        table = {"Scenario": scenario}
        for _, row in agg.iterrows():
            table[f"No. of OVs {row['value']}"] = row["n_ovs_median"]
            table[f"Mean area km2 {row['value']}"] = row["mean_area_km2_median"]
        return pd.DataFrame([table])
    return pd.DataFrame(
        {
            "Step size (m)": agg["value"],
            "Opt. factor": agg.get("opt_factor"),
            "Median time (s)": agg["wall_time_s_median"],
            "Candidate (m)": agg["candidate_length_median"],
            "Optimised (m)": agg["optimized_length_median"],
            "Difference (m)": agg["delta_length_median"],
        }
    )


# --------------------------------------------------
def report_basename(report: ExperimentReport) -> str:
    return f"{report.spec.suite}_{Path(report.spec.scenario).stem}"


# --------------------------------------------------
def write_report(report: ExperimentReport, out_dir: str | Path) -> Tuple[Path, Path]:
    """One CSV row per seed and sweep point plus a Markdown summary; both
    replace earlier files of the same name."""
    out_dir = Path(out_dir)
    name = report_basename(report)
    csv_path = write_csv(out_dir / f"{name}.csv", report.to_dataframe())
    md_path = write_markdown(
        out_dir / f"{name}.md",
        [
            (f"{report.spec.suite} / {report.spec.scenario}", summary_table(report)),
            ("Aggregates (median, IQR)", report.aggregates_dataframe()),
        ],
    )
    logger.info(f"Report written to {csv_path} and {md_path}")
    return csv_path, md_path
