__all__ = ["sanitize_dataframe_for_json", "round_significant"]

import numpy as np
import pandas as pd


# -------------------------------------------------
def sanitize_dataframe_for_json(df: pd.DataFrame) -> pd.DataFrame:
    """
    Cleans a DataFrame so it can be dumped to JSON or validated with pydantic.

    - Replaces np.nan, np.inf and -np.inf with None
    - Converts numpy scalars to native Python types
    """
    with pd.option_context("future.no_silent_downcasting", True):
        df_clean = df.replace([np.nan, np.inf, -np.inf], None).infer_objects(
            copy=False
        )
        df_clean = df_clean.astype(object).where(pd.notnull(df_clean), None)
        df_clean = df_clean.apply(
            lambda col: col.map(lambda x: x.item() if hasattr(x, "item") else x)
        )
        return df_clean


# -------------------------------------------------
def round_significant(value: float, digits: int = 9) -> float | None:
    """Rounds to ``digits`` significant digits; non-finite values become None."""
    if value is None or not np.isfinite(value):
        return None
    return float(f"{float(value):.{digits}g}")
