from dataclasses import asdict, is_dataclass
from typing import Sequence, Union

import numpy as np
import pandas as pd
import polars as pl


def to_pd_df(
    df: Union[pd.DataFrame, pl.DataFrame, pl.LazyFrame, Sequence[object]],
) -> pd.DataFrame:
    """
    Convert benchmark or report data to a pandas dataframe.

    Accepts pandas and polars frames, numpy arrays, and sequences of dataclass
    records (e.g. `BenchRecord`) or dicts.
    """
    if isinstance(df, pd.DataFrame):
        return df
    elif isinstance(df, pl.DataFrame):
        return df.to_pandas()
    elif isinstance(df, pl.LazyFrame):
        return df.collect().to_pandas()
    elif isinstance(df, pd.Series):
        return df.to_frame()
    elif isinstance(df, pl.Series):
        return df.to_pandas().to_frame()
    elif isinstance(df, np.ndarray):
        return pd.DataFrame(df)
    elif isinstance(df, (list, tuple)):
        rows = [_record_to_dict(r) for r in df]
        return pd.DataFrame(rows)
    else:
        raise TypeError(
            f"df must be a pandas or polars dataframe or a list of records. Got {type(df)}."
        )


def _record_to_dict(record: object) -> dict:
    if is_dataclass(record) and not isinstance(record, type):
        if hasattr(record, "to_dict"):
            return record.to_dict()
        return asdict(record)
    elif isinstance(record, dict):
        return record
    else:
        raise TypeError(f"Records must be dataclasses or dicts. Got {type(record)}.")
